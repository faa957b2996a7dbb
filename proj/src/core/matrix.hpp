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

#ifndef LATORB_CORE_MATRIX_HPP
#define LATORB_CORE_MATRIX_HPP

#include "core/number_value.hpp"

namespace latorb {

struct Vec2 {
  NumberValue x, y;
};

inline Vec2 operator+(const Vec2& a, const Vec2& b) {
  return {a.x + b.x, a.y + b.y};
}
inline Vec2 operator-(const Vec2& a, const Vec2& b) {
  return {a.x - b.x, a.y - b.y};
}
inline Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
inline Vec2 operator*(const NumberValue& s, const Vec2& a) {
  return {s * a.x, s * a.y};
}
inline bool operator==(const Vec2& a, const Vec2& b) {
  return a.x == b.x && a.y == b.y;
}

// Row-major 2x2 matrix of NumberValues; columns col(0), col(1) act as the
// basis vectors wherever a matrix denotes a lattice basis.
struct Mat2 {
  NumberValue m00, m01, m10, m11;

  static Mat2 identity() {
    return {NumberValue(1), NumberValue(0), NumberValue(0), NumberValue(1)};
  }
  static Mat2 from_columns(const Vec2& c0, const Vec2& c1) {
    return {c0.x, c1.x, c0.y, c1.y};
  }

  Vec2 col(int i) const { return i == 0 ? Vec2{m00, m10} : Vec2{m01, m11}; }
  NumberValue det() const { return m00 * m11 - m01 * m10; }
  bool is_exact() const {
    return m00.is_exact() && m01.is_exact() && m10.is_exact() && m11.is_exact();
  }

  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Vec2 operator*(const Vec2& v) const {
    return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
  }

  // Inverse scaled by 1/det; requires nonzero determinant.
  Mat2 inverse() const {
    NumberValue d = det();
    return {m11 / d, -(m01 / d), -(m10 / d), m00 / d};
  }

  bool operator==(const Mat2& o) const {
    return m00 == o.m00 && m01 == o.m01 && m10 == o.m10 && m11 == o.m11;
  }
};

}  // namespace latorb

#endif
