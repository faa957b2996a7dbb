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

#include "core/bigfloat.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "core/errors.hpp"

namespace latorb {

namespace {

std::atomic<unsigned> g_default_prec{0};

unsigned initial_precision() {
  if (const char* env = std::getenv("LATORB_PRECISION")) {
    long v = std::atol(env);
    if (v >= 16 && v <= 1 << 20) return static_cast<unsigned>(v);
  }
  return 256;
}

unsigned resolve(unsigned prec) { return prec ? prec : default_precision(); }

// One ulp of x at its precision, as a double; +inf when out of double range.
double ulp_of(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return 0.0;
  if (!mpfr_number_p(x)) return std::numeric_limits<double>::infinity();
  long e = mpfr_get_exp(x) - static_cast<long>(mpfr_get_prec(x)) + 1;
  if (e > 1000) return std::numeric_limits<double>::infinity();
  if (e < -1060) return std::ldexp(1.0, -1060);
  return std::ldexp(1.0, static_cast<int>(e));
}

double abs_val(mpfr_srcptr x) {
  double d = std::fabs(mpfr_get_d(x, MPFR_RNDN));
  if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
  return d;
}

}  // namespace

unsigned default_precision() {
  unsigned v = g_default_prec.load(std::memory_order_relaxed);
  if (v == 0) {
    v = initial_precision();
    g_default_prec.store(v, std::memory_order_relaxed);
  }
  return v;
}

void set_default_precision(unsigned bits) {
  if (bits < 16 || bits > (1u << 20))
    fail(ErrorCode::invalid_argument, "precision out of range [16, 2^20]");
  g_default_prec.store(bits, std::memory_order_relaxed);
}

BigFloat::BigFloat() : BigFloat(default_precision()) {}

BigFloat::BigFloat(unsigned prec) {
  mpfr_init2(v_, resolve(prec));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) : err_(o.err_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept : err_(o.err_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    err_ = o.err_;
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) {
    mpfr_swap(v_, o.v_);
    err_ = o.err_;
  }
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::bump_err_ulp(int ternary) {
  if (ternary != 0) err_ += ulp_of(v_);
  if (!std::isfinite(err_)) err_ = std::numeric_limits<double>::infinity();
}

BigFloat BigFloat::from_long(long v, unsigned prec) {
  BigFloat r(resolve(prec));
  int t = mpfr_set_si(r.v_, v, MPFR_RNDN);
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::from_double(double v, unsigned prec) {
  BigFloat r(resolve(prec));
  int t = mpfr_set_d(r.v_, v, MPFR_RNDN);
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::from_mpz(const mpz_class& v, unsigned prec) {
  BigFloat r(resolve(prec));
  int t = mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::from_mpq(const mpq_class& v, unsigned prec) {
  BigFloat r(resolve(prec));
  int t = mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::from_string(const std::string& s, unsigned prec) {
  BigFloat r(resolve(prec));
  int base = (s.find("0x") != std::string::npos ||
              s.find("0X") != std::string::npos)
                 ? 16
                 : 10;
  int t = mpfr_set_str(r.v_, s.c_str(), base, MPFR_RNDN);
  if (t == -1 && !mpfr_number_p(r.v_))
    fail(ErrorCode::invalid_argument, "unparsable float literal: " + s);
  r.bump_err_ulp(t == 0 ? 0 : 1);
  return r;
}

BigFloat BigFloat::pi(unsigned prec) {
  BigFloat r(resolve(prec));
  int t = mpfr_const_pi(r.v_, MPFR_RNDN);
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
  BigFloat r(std::max(prec(), o.prec()));
  int t = mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
  r.err_ = err_ + o.err_;
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
  BigFloat r(std::max(prec(), o.prec()));
  int t = mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
  r.err_ = err_ + o.err_;
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
  BigFloat r(std::max(prec(), o.prec()));
  int t = mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
  r.err_ = abs_val(v_) * o.err_ + abs_val(o.v_) * err_ + err_ * o.err_;
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
  if (mpfr_zero_p(o.v_)) fail(ErrorCode::domain, "division by zero");
  BigFloat r(std::max(prec(), o.prec()));
  int t = mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
  double den = abs_val(o.v_);
  double safe = den - o.err_;
  if (safe <= 0) safe = den * 0.5;
  if (safe <= 0) safe = std::numeric_limits<double>::min();
  r.err_ = (err_ + abs_val(r.v_) * o.err_) / safe;
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  r.err_ = err_;
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(prec());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  r.err_ = err_;
  return r;
}

BigFloat BigFloat::sqrt() const {
  if (mpfr_sgn(v_) < 0) fail(ErrorCode::domain, "sqrt of negative value");
  BigFloat r(prec());
  int t = mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  double rv = abs_val(r.v_);
  r.err_ = (rv > 0) ? err_ / (2.0 * rv) : std::sqrt(err_);
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::exp() const {
  BigFloat r(prec());
  int t = mpfr_exp(r.v_, v_, MPFR_RNDN);
  r.err_ = abs_val(r.v_) * err_ * std::exp(std::min(err_, 1.0));
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::log() const {
  if (mpfr_sgn(v_) <= 0) fail(ErrorCode::domain, "log of nonpositive value");
  BigFloat r(prec());
  int t = mpfr_log(r.v_, v_, MPFR_RNDN);
  double x = abs_val(v_);
  r.err_ = (x > err_) ? err_ / (x - err_) : std::numeric_limits<double>::infinity();
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::sin() const {
  BigFloat r(prec());
  int t = mpfr_sin(r.v_, v_, MPFR_RNDN);
  r.err_ = err_;
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::cos() const {
  BigFloat r(prec());
  int t = mpfr_cos(r.v_, v_, MPFR_RNDN);
  r.err_ = err_;
  r.bump_err_ulp(t);
  return r;
}

BigFloat BigFloat::pow(double e) const {
  if (mpfr_sgn(v_) < 0) fail(ErrorCode::domain, "pow of negative base");
  BigFloat r(prec());
  BigFloat ex = BigFloat::from_double(e, prec());
  int t = mpfr_pow(r.v_, v_, ex.v_, MPFR_RNDN);
  double x = abs_val(v_);
  double rv = abs_val(r.v_);
  r.err_ = (x > 0) ? rv * std::fabs(e) * (err_ / x) : 0.0;
  r.bump_err_ulp(t);
  return r;
}

bool BigFloat::close_to(const BigFloat& o, double tol) const {
  BigFloat d = (*this - o).abs();
  return d.to_double() <= tol + err_ + o.err_;
}

mpz_class BigFloat::round_to_mpz() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_round(t, v_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

mpz_class BigFloat::floor_to_mpz() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_floor(t, v_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

std::string BigFloat::to_string() const {
  size_t digits = static_cast<size_t>(prec() * 0.30103) + 3;
  return to_string(digits);
}

std::string BigFloat::to_string(size_t digits) const {
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_) < 0)
    fail(ErrorCode::internal, "mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::string BigFloat::to_hex_string() const {
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%Ra", v_) < 0)
    fail(ErrorCode::internal, "mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

BigFloat min(const BigFloat& a, const BigFloat& b) { return a.cmp(b) <= 0 ? a : b; }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a.cmp(b) >= 0 ? a : b; }

}  // namespace latorb
