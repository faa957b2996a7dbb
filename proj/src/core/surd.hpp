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

#ifndef LATORB_CORE_SURD_HPP
#define LATORB_CORE_SURD_HPP

#include <gmpxx.h>

#include <string>

#include "core/bigfloat.hpp"

namespace latorb {

// Exact real quadratic number (a + b*sqrt(d)) / c with integer a, b, c,
// c > 0, gcd(a, b, c) = 1 and d >= 2 square-free. All arithmetic is exact
// integer arithmetic; two operands must live in the same field Q(sqrt(d))
// unless one of them is rational (b == 0).
class QuadraticSurd {
 public:
  QuadraticSurd(mpz_class a, mpz_class b, mpz_class c, mpz_class d);
  static QuadraticSurd from_rational(const mpq_class& q, const mpz_class& d);

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const mpz_class& d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  mpq_class to_rational() const;  // requires b == 0

  QuadraticSurd operator+(const QuadraticSurd& o) const;
  QuadraticSurd operator-(const QuadraticSurd& o) const;
  QuadraticSurd operator*(const QuadraticSurd& o) const;
  QuadraticSurd operator/(const QuadraticSurd& o) const;
  QuadraticSurd operator-() const;
  QuadraticSurd inverse() const;
  QuadraticSurd conjugate() const;  // (a - b*sqrt(d)) / c

  int sign() const;
  int cmp(const QuadraticSurd& o) const;
  int cmp(const mpq_class& q) const;
  bool operator==(const QuadraticSurd& o) const;

  mpz_class floor() const;
  BigFloat to_bigfloat(unsigned prec = 0) const;
  std::string to_string() const;

 private:
  void normalize();
  QuadraticSurd with_same_field(const QuadraticSurd& o, const char* op) const;

  mpz_class a_, b_, c_, d_;
};

// True when n >= 1 and no p^2 <= 10^8 divides n; larger inputs additionally
// get a perfect-square test on the unfactored part. Values used in practice
// are tiny, the cap only guards pathological input.
bool looks_square_free(const mpz_class& n);

}  // namespace latorb

#endif
