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

#ifndef LATORB_CORE_NUMBER_VALUE_HPP
#define LATORB_CORE_NUMBER_VALUE_HPP

#include <gmpxx.h>

#include <string>
#include <variant>

#include "core/bigfloat.hpp"
#include "core/surd.hpp"

#include "json.hpp"

namespace latorb {

// Shared numeric tower. Exact arms are a reduced rational and a normalized
// quadratic surd; the float arm is a BigFloat with tracked error bound.
// Arithmetic promotes exact*exact to exact and anything involving a float
// to float. There is deliberately no float -> exact conversion.
class NumberValue {
 public:
  enum class Kind { rational, surd, bigfloat };

  NumberValue() : v_(mpq_class(0)) {}
  NumberValue(long n) : v_(mpq_class(n)) {}
  NumberValue(const mpz_class& z) : v_(mpq_class(z)) {}
  NumberValue(mpq_class q) : v_(std::move(q)) { canonicalize(); }
  NumberValue(QuadraticSurd s);
  NumberValue(BigFloat f) : v_(std::move(f)) {}

  static NumberValue rational(const mpz_class& num, const mpz_class& den);

  Kind kind() const;
  bool is_exact() const { return kind() != Kind::bigfloat; }
  bool is_rational() const { return kind() == Kind::rational; }

  const mpq_class& as_rational() const;
  const QuadraticSurd& as_surd() const;
  const BigFloat& as_bigfloat() const;

  NumberValue operator+(const NumberValue& o) const;
  NumberValue operator-(const NumberValue& o) const;
  NumberValue operator*(const NumberValue& o) const;
  NumberValue operator/(const NumberValue& o) const;
  NumberValue operator-() const;
  NumberValue inverse() const;
  NumberValue abs() const;

  int sign() const;
  // Exact for exact operands; value-level (error-blind) when floats involved.
  int cmp(const NumberValue& o) const;
  bool operator==(const NumberValue& o) const { return cmp(o) == 0; }
  bool operator<(const NumberValue& o) const { return cmp(o) < 0; }
  bool operator<=(const NumberValue& o) const { return cmp(o) <= 0; }
  bool operator>(const NumberValue& o) const { return cmp(o) > 0; }
  bool operator>=(const NumberValue& o) const { return cmp(o) >= 0; }

  bool is_zero() const { return sign() == 0; }

  // Exact floor; rejects the float arm.
  mpz_class floor_exact() const;
  // Exact fractional part; rejects the float arm.
  NumberValue frac_exact() const;

  BigFloat to_bigfloat(unsigned prec = 0) const;
  std::string to_string() const;

  nlohmann::ordered_json to_json() const;
  static NumberValue from_json(const nlohmann::ordered_json& j);

  // Literal forms: "phi", "sqrt2m1", "rational:p/q" or "p/q",
  // "surd:sqrtD:a:b:c", "sqrtD:a:b:c", "sqrtD:a:c" (b = 1), "float:<dec>".
  static NumberValue parse(const std::string& literal);

 private:
  void canonicalize();
  std::variant<mpq_class, QuadraticSurd, BigFloat> v_;
};

}  // namespace latorb

#endif
