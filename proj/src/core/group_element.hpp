// Copyright 2026 The lattice-orbits authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LATORB_CORE_GROUP_ELEMENT_HPP
#define LATORB_CORE_GROUP_ELEMENT_HPP

#include "core/matrix.hpp"

namespace latorb {

// Element of SL(2, R): determinant 1 exactly for exact entries, within
// 2^-(P/2) for float entries at precision P.
class GroupElement {
 public:
  explicit GroupElement(Mat2 m);

  // One-parameter subgroups: diag(e^t, e^-t), upper and lower shears.
  // diagonal_flow(0) with an exact zero stays the exact identity.
  static GroupElement diagonal_flow(const BigFloat& t);
  static GroupElement upper_shear(const NumberValue& x);  // [[1, x], [0, 1]]
  static GroupElement lower_shear(const NumberValue& y);  // [[1, 0], [y, 1]]
  static GroupElement rotation(const BigFloat& theta);
  static GroupElement identity() { return GroupElement(Mat2::identity()); }

  const Mat2& matrix() const { return m_; }
  GroupElement operator*(const GroupElement& o) const {
    return GroupElement(m_ * o.m_);
  }
  GroupElement inverse() const;

  nlohmann::ordered_json to_json() const;
  static GroupElement from_json(const nlohmann::ordered_json& j);

 private:
  Mat2 m_;
};

}  // namespace latorb

#endif
