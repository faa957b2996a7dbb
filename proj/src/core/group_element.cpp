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

#include "core/group_element.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace latorb {

GroupElement::GroupElement(Mat2 m) : m_(std::move(m)) {
  NumberValue d = m_.det();
  if (m_.is_exact()) {
    if (!(d == NumberValue(1)))
      fail(ErrorCode::invalid_argument, "group element must have det 1");
  } else {
    BigFloat df = d.to_bigfloat();
    double tol = std::ldexp(1.0, -static_cast<int>(df.prec() / 2));
    if (!df.close_to(BigFloat::from_long(1, df.prec()), tol))
      fail(ErrorCode::precision, "det drifted from 1 beyond 2^-(P/2)");
  }
}

GroupElement GroupElement::diagonal_flow(const BigFloat& t) {
  if (t.is_zero() && t.is_exact_value()) return identity();
  BigFloat e = t.exp();
  BigFloat einv = (-t).exp();
  return GroupElement(Mat2{NumberValue(e), NumberValue(0), NumberValue(0),
                           NumberValue(einv)});
}

GroupElement GroupElement::upper_shear(const NumberValue& x) {
  return GroupElement(Mat2{NumberValue(1), x, NumberValue(0), NumberValue(1)});
}

GroupElement GroupElement::lower_shear(const NumberValue& y) {
  return GroupElement(Mat2{NumberValue(1), NumberValue(0), y, NumberValue(1)});
}

GroupElement GroupElement::rotation(const BigFloat& theta) {
  if (theta.is_zero() && theta.is_exact_value()) return identity();
  BigFloat c = theta.cos(), s = theta.sin();
  return GroupElement(
      Mat2{NumberValue(c), NumberValue(-s), NumberValue(s), NumberValue(c)});
}

GroupElement GroupElement::inverse() const {
  // det is 1, so the adjugate is the inverse.
  return GroupElement(Mat2{m_.m11, -m_.m01, -m_.m10, m_.m00});
}

nlohmann::ordered_json GroupElement::to_json() const {
  nlohmann::ordered_json j;
  j["m00"] = m_.m00.to_json();
  j["m01"] = m_.m01.to_json();
  j["m10"] = m_.m10.to_json();
  j["m11"] = m_.m11.to_json();
  return j;
}

GroupElement GroupElement::from_json(const nlohmann::ordered_json& j) {
  return GroupElement(Mat2{
      NumberValue::from_json(j.at("m00")), NumberValue::from_json(j.at("m01")),
      NumberValue::from_json(j.at("m10")), NumberValue::from_json(j.at("m11"))});
}

}  // namespace latorb
