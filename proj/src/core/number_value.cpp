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

#include "core/number_value.hpp"

#include <sstream>
#include <vector>

#include "core/errors.hpp"

namespace latorb {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

mpq_class parse_rational(const std::string& s) {
  size_t slash = s.find('/');
  try {
    mpz_class num(slash == std::string::npos ? s : s.substr(0, slash));
    mpz_class den = slash == std::string::npos ? mpz_class(1)
                                               : mpz_class(s.substr(slash + 1));
    if (den == 0)
      fail(ErrorCode::invalid_argument, "rational denominator must be nonzero");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::invalid_argument, "unparsable rational: " + s);
  }
}

}  // namespace

NumberValue::NumberValue(QuadraticSurd s) : v_(std::move(s)) { canonicalize(); }

void NumberValue::canonicalize() {
  if (auto* q = std::get_if<mpq_class>(&v_)) {
    q->canonicalize();
  } else if (auto* s = std::get_if<QuadraticSurd>(&v_)) {
    if (s->is_rational()) v_ = s->to_rational();
  }
}

NumberValue NumberValue::rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) fail(ErrorCode::invalid_argument, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return NumberValue(q);
}

NumberValue::Kind NumberValue::kind() const {
  if (std::holds_alternative<mpq_class>(v_)) return Kind::rational;
  if (std::holds_alternative<QuadraticSurd>(v_)) return Kind::surd;
  return Kind::bigfloat;
}

const mpq_class& NumberValue::as_rational() const {
  if (kind() != Kind::rational) fail(ErrorCode::domain, "value is not rational");
  return std::get<mpq_class>(v_);
}

const QuadraticSurd& NumberValue::as_surd() const {
  if (kind() != Kind::surd) fail(ErrorCode::domain, "value is not a surd");
  return std::get<QuadraticSurd>(v_);
}

const BigFloat& NumberValue::as_bigfloat() const {
  if (kind() != Kind::bigfloat) fail(ErrorCode::domain, "value is not a float");
  return std::get<BigFloat>(v_);
}

namespace {

template <typename QOp, typename SOp, typename FOp>
NumberValue binary_dispatch(const NumberValue& a, const NumberValue& b, QOp qop,
                            SOp sop, FOp fop) {
  using K = NumberValue::Kind;
  K ka = a.kind(), kb = b.kind();
  if (ka == K::bigfloat || kb == K::bigfloat)
    return NumberValue(fop(a.to_bigfloat(), b.to_bigfloat()));
  if (ka == K::rational && kb == K::rational)
    return NumberValue(qop(a.as_rational(), b.as_rational()));
  // At least one surd, both exact: lift into a common field.
  QuadraticSurd sa = (ka == K::surd)
                         ? a.as_surd()
                         : QuadraticSurd::from_rational(a.as_rational(),
                                                        b.as_surd().d());
  QuadraticSurd sb = (kb == K::surd)
                         ? b.as_surd()
                         : QuadraticSurd::from_rational(b.as_rational(),
                                                        sa.d());
  return NumberValue(sop(sa, sb));
}

}  // namespace

NumberValue NumberValue::operator+(const NumberValue& o) const {
  return binary_dispatch(
      *this, o, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x + y); },
      [](const QuadraticSurd& x, const QuadraticSurd& y) { return x + y; },
      [](const BigFloat& x, const BigFloat& y) { return x + y; });
}

NumberValue NumberValue::operator-(const NumberValue& o) const {
  return binary_dispatch(
      *this, o, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x - y); },
      [](const QuadraticSurd& x, const QuadraticSurd& y) { return x - y; },
      [](const BigFloat& x, const BigFloat& y) { return x - y; });
}

NumberValue NumberValue::operator*(const NumberValue& o) const {
  return binary_dispatch(
      *this, o, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x * y); },
      [](const QuadraticSurd& x, const QuadraticSurd& y) { return x * y; },
      [](const BigFloat& x, const BigFloat& y) { return x * y; });
}

NumberValue NumberValue::operator/(const NumberValue& o) const {
  if (o.is_exact() && o.is_zero()) fail(ErrorCode::domain, "division by zero");
  return binary_dispatch(
      *this, o, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x / y); },
      [](const QuadraticSurd& x, const QuadraticSurd& y) { return x / y; },
      [](const BigFloat& x, const BigFloat& y) { return x / y; });
}

NumberValue NumberValue::operator-() const {
  switch (kind()) {
    case Kind::rational: return NumberValue(mpq_class(-as_rational()));
    case Kind::surd: return NumberValue(-as_surd());
    default: return NumberValue(-as_bigfloat());
  }
}

NumberValue NumberValue::inverse() const {
  return NumberValue(mpq_class(1)) / *this;
}

NumberValue NumberValue::abs() const { return sign() < 0 ? -*this : *this; }

int NumberValue::sign() const {
  switch (kind()) {
    case Kind::rational: return sgn(as_rational());
    case Kind::surd: return as_surd().sign();
    default: return as_bigfloat().sign();
  }
}

int NumberValue::cmp(const NumberValue& o) const {
  using K = Kind;
  K ka = kind(), kb = o.kind();
  if (ka == K::bigfloat || kb == K::bigfloat)
    return to_bigfloat().cmp(o.to_bigfloat());
  if (ka == K::rational && kb == K::rational)
    return ::cmp(as_rational(), o.as_rational());
  if (ka == K::surd && kb == K::rational) return as_surd().cmp(o.as_rational());
  if (ka == K::rational && kb == K::surd) return -o.as_surd().cmp(as_rational());
  return as_surd().cmp(o.as_surd());
}

mpz_class NumberValue::floor_exact() const {
  switch (kind()) {
    case Kind::rational: {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), as_rational().get_num_mpz_t(),
                 as_rational().get_den_mpz_t());
      return f;
    }
    case Kind::surd:
      return as_surd().floor();
    default:
      fail(ErrorCode::domain, "floor_exact on a float value");
  }
}

NumberValue NumberValue::frac_exact() const {
  return *this - NumberValue(floor_exact());
}

BigFloat NumberValue::to_bigfloat(unsigned prec) const {
  switch (kind()) {
    case Kind::rational: return BigFloat::from_mpq(as_rational(), prec);
    case Kind::surd: return as_surd().to_bigfloat(prec);
    default: return as_bigfloat();
  }
}

std::string NumberValue::to_string() const {
  switch (kind()) {
    case Kind::rational: return as_rational().get_str();
    case Kind::surd: return as_surd().to_string();
    default: return as_bigfloat().to_string();
  }
}

nlohmann::ordered_json NumberValue::to_json() const {
  nlohmann::ordered_json j;
  switch (kind()) {
    case Kind::rational:
      j["type"] = "rational";
      j["num"] = as_rational().get_num().get_str();
      j["den"] = as_rational().get_den().get_str();
      break;
    case Kind::surd:
      j["type"] = "surd";
      j["a"] = as_surd().a().get_str();
      j["b"] = as_surd().b().get_str();
      j["c"] = as_surd().c().get_str();
      j["d"] = as_surd().d().get_str();
      break;
    default:
      j["type"] = "float";
      j["prec"] = as_bigfloat().prec();
      j["hex"] = as_bigfloat().to_hex_string();
      j["dec"] = as_bigfloat().to_string();
      j["err"] = as_bigfloat().err();
      break;
  }
  return j;
}

NumberValue NumberValue::from_json(const nlohmann::ordered_json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "rational") {
    mpz_class num(j.at("num").get<std::string>());
    mpz_class den(j.at("den").get<std::string>());
    return rational(num, den);
  }
  if (type == "surd") {
    return NumberValue(QuadraticSurd(mpz_class(j.at("a").get<std::string>()),
                                     mpz_class(j.at("b").get<std::string>()),
                                     mpz_class(j.at("c").get<std::string>()),
                                     mpz_class(j.at("d").get<std::string>())));
  }
  if (type == "float") {
    unsigned prec = j.value("prec", default_precision());
    BigFloat f = BigFloat::from_string(j.at("hex").get<std::string>(), prec);
    if (j.contains("err")) f.set_err(j.at("err").get<double>());
    return NumberValue(f);
  }
  fail(ErrorCode::invalid_argument, "unknown NumberValue type: " + type);
}

NumberValue NumberValue::parse(const std::string& literal) {
  std::string s = literal;
  if (s == "phi" || s == "surd:phi")
    return NumberValue(QuadraticSurd(-1, 1, 2, 5));  // (sqrt5 - 1)/2
  if (s == "sqrt2m1" || s == "surd:sqrt2m1")
    return NumberValue(QuadraticSurd(-1, 1, 1, 2));  // sqrt2 - 1
  if (s.rfind("rational:", 0) == 0) return NumberValue(parse_rational(s.substr(9)));
  if (s.rfind("float:", 0) == 0)
    return NumberValue(BigFloat::from_string(s.substr(6)));
  if (s.rfind("surd:", 0) == 0) s = s.substr(5);
  if (s.rfind("sqrt", 0) == 0) {
    // sqrtD:a:b:c -> (a + b sqrtD)/c; sqrtD:a:c is shorthand for b = 1.
    auto parts = split(s, ':');
    mpz_class d(parts[0].substr(4));
    if (parts.size() == 4)
      return NumberValue(QuadraticSurd(mpz_class(parts[1]), mpz_class(parts[2]),
                                       mpz_class(parts[3]), d));
    if (parts.size() == 3)
      return NumberValue(
          QuadraticSurd(mpz_class(parts[1]), 1, mpz_class(parts[2]), d));
    fail(ErrorCode::invalid_argument, "surd literal needs sqrtD:a[:b]:c");
  }
  if (s.find('/') != std::string::npos || !s.empty())
    return NumberValue(parse_rational(s));
  fail(ErrorCode::invalid_argument, "empty number literal");
}

}  // namespace latorb
