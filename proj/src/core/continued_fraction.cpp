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

#include "core/continued_fraction.hpp"

#include <map>
#include <tuple>

#include "core/errors.hpp"

namespace latorb {

namespace {

void require_unit_interval_open(const NumberValue& x) {
  if (!x.is_exact())
    fail(ErrorCode::domain, "continued fractions need an exact value");
  if (x.sign() <= 0 || x.cmp(NumberValue(mpq_class(1))) >= 0)
    fail(ErrorCode::domain, "value must lie in (0, 1)");
}

}  // namespace

std::vector<mpz_class> cf_digits(const NumberValue& x, size_t n) {
  require_unit_interval_open(x);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  if (x.is_rational()) {
    // Euclidean algorithm on (num, den); the final quotient is >= 2
    // automatically because remainders strictly decrease.
    mpz_class p = x.as_rational().get_num(), q = x.as_rational().get_den();
    // x = p/q in (0,1): digits of q/p.
    while (p != 0 && out.size() < n) {
      mpz_class a, r;
      mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
      out.push_back(a);
      q = p;
      p = r;
    }
    return out;
  }
  QuadraticSurd z = x.as_surd();
  for (size_t i = 0; i < n; ++i) {
    QuadraticSurd inv = z.inverse();
    mpz_class a = inv.floor();
    out.push_back(a);
    z = inv - QuadraticSurd::from_rational(mpq_class(a), inv.d());
    // Irrational input stays irrational under the Gauss map.
  }
  return out;
}

std::vector<Convergent> convergents(std::span<const mpz_class> digits) {
  std::vector<Convergent> out;
  mpz_class p_prev = 1, q_prev = 0, p = 0, q = 1;
  for (const mpz_class& a : digits) {
    if (a < 1) fail(ErrorCode::invalid_argument, "continued fraction digit < 1");
    mpz_class pn = a * p + p_prev;
    mpz_class qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    out.push_back({p, q});
  }
  return out;
}

std::pair<NumberValue, NumberValue> remainder_and_z(const NumberValue& x,
                                                    size_t n) {
  require_unit_interval_open(x);
  if (n == 0) fail(ErrorCode::invalid_argument, "remainder index must be >= 1");
  // rho_1 = 1/x, rho_{k+1} = 1/(rho_k - a_k).
  NumberValue rho = x.inverse();
  for (size_t k = 2; k <= n; ++k) {
    NumberValue z = rho - NumberValue(rho.floor_exact());
    if (z.is_zero())
      fail(ErrorCode::domain,
           "rational expansion terminated before requested depth");
    rho = z.inverse();
  }
  NumberValue z = rho - NumberValue(rho.floor_exact());
  return {rho, z};
}

bool CylinderInterval::contains(const mpq_class& x) const {
  int cl = cmp(x, lo), ch = cmp(x, hi);
  if (cl < 0 || (cl == 0 && !lo_closed)) return false;
  if (ch > 0 || (ch == 0 && !hi_closed)) return false;
  return true;
}

bool CylinderInterval::contains(const NumberValue& x) const {
  NumberValue l{lo}, h{hi};
  int cl = x.cmp(l), ch = x.cmp(h);
  if (cl < 0 || (cl == 0 && !lo_closed)) return false;
  if (ch > 0 || (ch == 0 && !hi_closed)) return false;
  return true;
}

std::pair<mpq_class, mpq_class> CylinderInterval::closure() const {
  return {lo, hi};
}

CylinderInterval cylinder(std::span<const mpz_class> index) {
  if (index.empty()) fail(ErrorCode::invalid_argument, "empty cylinder index");
  auto conv = convergents(index);
  size_t n = index.size();
  Convergent last = conv.back();
  Convergent prev = n >= 2 ? conv[n - 2] : Convergent{mpz_class(0), mpz_class(1)};

  CylinderInterval c;
  c.index.assign(index.begin(), index.end());
  c.conv_prev = prev;
  c.conv_last = last;
  mpq_class at_last(last.p, last.q);
  at_last.canonicalize();
  mpq_class mediant(last.p + prev.p, last.q + prev.q);
  mediant.canonicalize();
  if (n % 2 == 0) {
    c.lo = at_last;
    c.hi = mediant;
    c.lo_closed = true;
    c.hi_closed = false;
  } else {
    c.lo = mediant;
    c.hi = at_last;
    c.lo_closed = false;
    c.hi_closed = true;
  }
  c.sigma = mpq_class(prev.q, last.q);
  c.sigma.canonicalize();
  return c;
}

PeriodicTail detect_period(const QuadraticSurd& x, size_t max_steps) {
  if (x.is_rational()) fail(ErrorCode::domain, "rational value has no period");
  std::map<std::tuple<mpz_class, mpz_class, mpz_class>, size_t> seen;
  std::vector<mpz_class> digits;
  QuadraticSurd z = x;
  for (size_t i = 0; i < max_steps; ++i) {
    auto key = std::make_tuple(z.a(), z.b(), z.c());
    auto it = seen.find(key);
    if (it != seen.end()) {
      PeriodicTail t;
      t.preperiod.assign(digits.begin(), digits.begin() + it->second);
      t.period.assign(digits.begin() + it->second, digits.end());
      return t;
    }
    seen.emplace(key, i);
    QuadraticSurd inv = z.inverse();
    mpz_class a = inv.floor();
    digits.push_back(a);
    z = inv - QuadraticSurd::from_rational(mpq_class(a), inv.d());
  }
  fail(ErrorCode::no_convergence, "no period detected within step limit");
}

struct CFExpansionState {
  mutable std::mutex mu;
  mutable std::vector<mpz_class> memo;
  mutable bool ended = false;  // finite expansion fully produced

  // Exactly one of these drives production.
  std::optional<NumberValue> exact;  // remaining Gauss-map state
  mutable std::optional<NumberValue> gauss_state;
  std::optional<PeriodicTail> periodic;
  std::function<mpz_class(size_t)> stream;
  bool list_only = false;
};

CFExpansion CFExpansion::from_exact(const NumberValue& x) {
  if (!x.is_exact()) fail(ErrorCode::domain, "expansion needs an exact value");
  if (x.sign() <= 0 || x.cmp(NumberValue(mpq_class(1))) >= 0)
    fail(ErrorCode::domain, "value must lie in (0, 1)");
  CFExpansion e;
  e.state_ = std::make_shared<CFExpansionState>();
  e.state_->exact = x;
  e.state_->gauss_state = x;
  e.source_ = x.is_rational() ? Source::finite_rational : Source::periodic;
  if (!x.is_rational()) {
    // Surd expansions are produced from the detected cycle so that deep
    // digit access does not re-run surd arithmetic.
    e.state_->periodic = detect_period(x.as_surd());
  }
  return e;
}

CFExpansion CFExpansion::from_digits(std::vector<mpz_class> digits) {
  for (const auto& d : digits)
    if (d < 1) fail(ErrorCode::invalid_argument, "digit < 1");
  CFExpansion e;
  e.state_ = std::make_shared<CFExpansionState>();
  e.state_->memo = std::move(digits);
  e.state_->ended = true;
  e.state_->list_only = true;
  e.source_ = Source::digit_list;
  return e;
}

CFExpansion CFExpansion::from_periodic(PeriodicTail tail) {
  if (tail.period.empty())
    fail(ErrorCode::invalid_argument, "empty period");
  CFExpansion e;
  e.state_ = std::make_shared<CFExpansionState>();
  e.state_->periodic = std::move(tail);
  e.source_ = Source::periodic;
  return e;
}

CFExpansion CFExpansion::from_stream(std::function<mpz_class(size_t)> producer) {
  CFExpansion e;
  e.state_ = std::make_shared<CFExpansionState>();
  e.state_->stream = std::move(producer);
  e.source_ = Source::stream;
  return e;
}

std::optional<mpz_class> CFExpansion::digit(size_t i) const {
  if (!state_) return std::nullopt;
  auto& st = *state_;
  std::lock_guard<std::mutex> lock(st.mu);
  if (i < st.memo.size()) return st.memo[i];
  if (st.list_only || st.ended) return std::nullopt;
  if (st.periodic) return st.periodic->digit(i);
  if (st.stream) {
    while (st.memo.size() <= i) st.memo.push_back(st.stream(st.memo.size()));
    return st.memo[i];
  }
  // Finite rational: iterate the exact Gauss map as far as needed.
  while (st.memo.size() <= i) {
    NumberValue& z = *st.gauss_state;
    if (z.is_zero()) {
      st.ended = true;
      return std::nullopt;
    }
    NumberValue inv = z.inverse();
    mpz_class a = inv.floor_exact();
    st.memo.push_back(a);
    z = inv - NumberValue(a);
  }
  return st.memo[i];
}

std::vector<mpz_class> CFExpansion::prefix(size_t n) const {
  std::vector<mpz_class> out;
  for (size_t i = 0; i < n; ++i) {
    auto d = digit(i);
    if (!d) break;
    out.push_back(*d);
  }
  return out;
}

}  // namespace latorb
