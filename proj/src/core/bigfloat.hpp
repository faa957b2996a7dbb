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

#ifndef LATORB_CORE_BIGFLOAT_HPP
#define LATORB_CORE_BIGFLOAT_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace latorb {

// Default working precision in bits. Initialized from the environment
// variable LATORB_PRECISION on first use, 256 if unset.
unsigned default_precision();
void set_default_precision(unsigned bits);

// Arbitrary-precision float carrying an absolute error bound. Rounding of
// each operation contributes one ulp to the bound only when MPFR reports
// the result as inexact, so values built from integer data keep err() == 0.
class BigFloat {
 public:
  BigFloat();
  explicit BigFloat(unsigned prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat from_long(long v, unsigned prec = 0);
  static BigFloat from_double(double v, unsigned prec = 0);
  static BigFloat from_mpz(const mpz_class& v, unsigned prec = 0);
  static BigFloat from_mpq(const mpq_class& v, unsigned prec = 0);
  static BigFloat from_string(const std::string& s, unsigned prec = 0);
  static BigFloat pi(unsigned prec = 0);

  unsigned prec() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  double err() const { return err_; }
  void set_err(double e) { err_ = e; }
  bool is_exact_value() const { return err_ == 0.0; }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  BigFloat operator+(const BigFloat& o) const;
  BigFloat operator-(const BigFloat& o) const;
  BigFloat operator*(const BigFloat& o) const;
  BigFloat operator/(const BigFloat& o) const;
  BigFloat operator-() const;

  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  BigFloat abs() const;
  BigFloat sqrt() const;
  BigFloat exp() const;
  BigFloat log() const;
  BigFloat sin() const;
  BigFloat cos() const;
  BigFloat pow(double e) const;

  // Value-level comparison, ignoring error bounds (deterministic).
  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp_abs(const BigFloat& o) const { return mpfr_cmpabs(v_, o.v_); }
  int sign() const { return mpfr_sgn(v_); }
  bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
  bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
  bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
  bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }
  bool operator==(const BigFloat& o) const { return cmp(o) == 0; }

  // True when |*this - o| <= tol accounting for both error bounds.
  bool close_to(const BigFloat& o, double tol) const;

  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }

  // Nearest integer / floor of the value (no error awareness; callers
  // needing certified floors use the exact tower instead).
  mpz_class round_to_mpz() const;
  mpz_class floor_to_mpz() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Decimal with enough digits to identify the binary value.
  std::string to_string() const;
  std::string to_string(size_t digits) const;
  // Bit-exact hexadecimal form ("0x1.8p+1"), round-trips via from_string.
  std::string to_hex_string() const;

 private:
  void bump_err_ulp(int ternary);

  mpfr_t v_;
  double err_ = 0.0;
};

BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);

}  // namespace latorb

#endif
