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

#include "core/surd.hpp"

#include "core/errors.hpp"

namespace latorb {

namespace {

// sign of A + B*sqrt(d), exact.
int sign_linear_in_sqrt(const mpz_class& A, const mpz_class& B,
                        const mpz_class& d) {
  int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare A^2 against B^2 d.
  mpz_class lhs = A * A, rhs = B * B * d;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  // |A| dominates iff A^2 > B^2 d.
  return c > 0 ? sa : sb;
}

}  // namespace

bool looks_square_free(const mpz_class& n) {
  if (n < 1) return false;
  mpz_class m = n;
  for (long p = 2; p * p * p * p <= 100000000L && mpz_class(p) * p <= m; ++p) {
    mpz_class p2 = mpz_class(p) * p;
    if (m % p2 == 0) return false;
    while (m % p == 0) m /= p;
  }
  if (m > 1 && mpz_perfect_square_p(m.get_mpz_t())) return false;
  return true;
}

QuadraticSurd::QuadraticSurd(mpz_class a, mpz_class b, mpz_class c,
                             mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) fail(ErrorCode::invalid_argument, "surd denominator is zero");
  if (d_ == 1) {  // sqrt(1) folds into the rational part
    a_ += b_;
    b_ = 0;
    d_ = 2;
  }
  if (d_ < 2 || !looks_square_free(d_))
    fail(ErrorCode::invalid_argument,
         "surd radicand must be square-free and >= 2, got " + d_.get_str());
  normalize();
}

QuadraticSurd QuadraticSurd::from_rational(const mpq_class& q,
                                           const mpz_class& d) {
  return QuadraticSurd(q.get_num(), 0, q.get_den(), d);
}

void QuadraticSurd::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

mpq_class QuadraticSurd::to_rational() const {
  if (b_ != 0) fail(ErrorCode::domain, "surd is irrational");
  mpq_class q(a_, c_);
  q.canonicalize();
  return q;
}

QuadraticSurd QuadraticSurd::with_same_field(const QuadraticSurd& o,
                                             const char* op) const {
  if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
    fail(ErrorCode::domain, std::string("mixed radicands in surd ") + op +
                                ": sqrt" + d_.get_str() + " vs sqrt" +
                                o.d_.get_str());
  // Adopt the radicand of whichever operand is irrational.
  mpz_class d = (b_ != 0) ? d_ : o.d_;
  return QuadraticSurd(o.a_, o.b_, o.c_, d);
}

QuadraticSurd QuadraticSurd::operator+(const QuadraticSurd& o) const {
  QuadraticSurd rhs = with_same_field(o, "add");
  mpz_class d = (b_ != 0) ? d_ : rhs.d_;
  return QuadraticSurd(a_ * rhs.c_ + rhs.a_ * c_, b_ * rhs.c_ + rhs.b_ * c_,
                       c_ * rhs.c_, d);
}

QuadraticSurd QuadraticSurd::operator-(const QuadraticSurd& o) const {
  return *this + (-o);
}

QuadraticSurd QuadraticSurd::operator*(const QuadraticSurd& o) const {
  QuadraticSurd rhs = with_same_field(o, "mul");
  mpz_class d = (b_ != 0) ? d_ : rhs.d_;
  return QuadraticSurd(a_ * rhs.a_ + b_ * rhs.b_ * d, a_ * rhs.b_ + b_ * rhs.a_,
                       c_ * rhs.c_, d);
}

QuadraticSurd QuadraticSurd::operator/(const QuadraticSurd& o) const {
  return *this * o.inverse();
}

QuadraticSurd QuadraticSurd::operator-() const {
  return QuadraticSurd(-a_, -b_, c_, d_);
}

QuadraticSurd QuadraticSurd::inverse() const {
  // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
  mpz_class den = a_ * a_ - b_ * b_ * d_;
  if (den == 0) fail(ErrorCode::domain, "inverse of zero surd");
  return QuadraticSurd(c_ * a_, -c_ * b_, den, d_);
}

QuadraticSurd QuadraticSurd::conjugate() const {
  return QuadraticSurd(a_, -b_, c_, d_);
}

int QuadraticSurd::sign() const { return sign_linear_in_sqrt(a_, b_, d_); }

int QuadraticSurd::cmp(const QuadraticSurd& o) const {
  if (b_ != 0 && o.b_ != 0 && d_ != o.d_) {
    // Distinct square-free radicands never produce equal irrational values;
    // compare through the difference in a common (numeric) ordering is not
    // exact, so compare via sign of (this - rational midpoint) is unusable.
    // Use exact resultant-free route: compare by isolating sqrt terms.
    // (x1 - x2) sign where x_i = (a_i + b_i sqrt d_i)/c_i:
    // sign(a1 c2 - a2 c1 + b1 c2 sqrt d1 - b2 c1 sqrt d2). Square twice.
    mpz_class A = a_ * o.c_ - o.a_ * c_;
    mpz_class B1 = b_ * o.c_;
    mpz_class B2 = o.b_ * c_;
    // s = A + B1 sqrt(d1) - B2 sqrt(d2). Compare A + B1 sqrt(d1) vs B2 sqrt(d2).
    // Let L = A + B1 sqrt(d1), R = B2 sqrt(d2). sign(L - R):
    int sR = sgn(B2);
    int sL = sign_linear_in_sqrt(A, B1, d_);
    if (sL != sR) {
      if (sL == 0) return -sR;
      if (sR == 0) return sL;
      return sL;
    }
    if (sL == 0) return 0;
    // Same nonzero sign: compare L^2 vs R^2: L^2 = A^2 + B1^2 d1 + 2 A B1 sqrt(d1)
    mpz_class P = A * A + B1 * B1 * d_ - B2 * B2 * o.d_;
    mpz_class Q = 2 * A * B1;
    int s2 = sign_linear_in_sqrt(P, Q, d_);
    return sL > 0 ? s2 : -s2;
  }
  mpz_class d = (b_ != 0) ? d_ : o.d_;
  mpz_class A = a_ * o.c_ - o.a_ * c_;
  mpz_class B = b_ * o.c_ - o.b_ * c_;
  return sign_linear_in_sqrt(A, B, d);
}

int QuadraticSurd::cmp(const mpq_class& q) const {
  mpz_class A = a_ * q.get_den() - q.get_num() * c_;
  mpz_class B = b_ * q.get_den();
  return sign_linear_in_sqrt(A, B, d_);
}

bool QuadraticSurd::operator==(const QuadraticSurd& o) const {
  return cmp(o) == 0;
}

mpz_class QuadraticSurd::floor() const {
  BigFloat approx = to_bigfloat(128);
  mpz_class n = approx.floor_to_mpz();
  // Exact fix-up: want n <= x < n + 1.
  int guard = 0;
  while (cmp(mpq_class(n)) < 0) {
    --n;
    if (++guard > 64) fail(ErrorCode::internal, "surd floor did not settle");
  }
  while (cmp(mpq_class(n + 1)) >= 0) {
    ++n;
    if (++guard > 64) fail(ErrorCode::internal, "surd floor did not settle");
  }
  return n;
}

BigFloat QuadraticSurd::to_bigfloat(unsigned prec) const {
  BigFloat sd = BigFloat::from_mpz(d_, prec).sqrt();
  BigFloat num = BigFloat::from_mpz(a_, prec) + BigFloat::from_mpz(b_, prec) * sd;
  return num / BigFloat::from_mpz(c_, prec);
}

std::string QuadraticSurd::to_string() const {
  return "(" + a_.get_str() + (b_ >= 0 ? "+" : "") + b_.get_str() + "*sqrt(" +
         d_.get_str() + "))/" + c_.get_str();
}

}  // namespace latorb
