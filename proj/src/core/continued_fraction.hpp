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

#ifndef LATORB_CORE_CONTINUED_FRACTION_HPP
#define LATORB_CORE_CONTINUED_FRACTION_HPP

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "core/number_value.hpp"

namespace latorb {

// Digits of the canonical continued fraction of an exact x in (0, 1),
// computed by exact Gauss-map iteration. Rational expansions terminate
// (with last digit >= 2, which the Euclidean algorithm yields on its own)
// and the returned list is then shorter than n.
std::vector<mpz_class> cf_digits(const NumberValue& x, size_t n);

struct Convergent {
  mpz_class p, q;
  mpq_class value() const { mpq_class v(p, q); v.canonicalize(); return v; }
};

// p_i/q_i for i = 1..digits.size() via the standard three-term recurrence
// seeded with p_{-1}=1, q_{-1}=0, p_0=0, q_0=1. Rejects digits < 1.
std::vector<Convergent> convergents(std::span<const mpz_class> digits);

// rho_n with x = [0; a_1, ..., a_{n-1}, rho_n] and z_n = rho_n - a_n,
// both exact. Errors out when a rational expansion ends before depth n.
std::pair<NumberValue, NumberValue> remainder_and_z(const NumberValue& x,
                                                    size_t n);

struct CylinderInterval {
  std::vector<mpz_class> index;
  mpq_class lo, hi;        // lo < hi always
  bool lo_closed = false;
  bool hi_closed = false;
  mpq_class sigma;         // q_{n-1}/q_n
  Convergent conv_prev;    // (p_{n-1}, q_{n-1})
  Convergent conv_last;    // (p_n, q_n)

  mpq_class length() const { return hi - lo; }
  bool contains(const mpq_class& x) const;
  bool contains(const NumberValue& x) const;
  // Closure of the interval, as [lo, hi].
  std::pair<mpq_class, mpq_class> closure() const;
};

// The set of x in (0,1) whose first n digits equal the multi-index.
// Even n: [p_n/q_n, (p_n+p_{n-1})/(q_n+q_{n-1})), odd n reversed half-open.
CylinderInterval cylinder(std::span<const mpz_class> index);

// Eventually periodic digit description: digits are preperiod followed by
// period repeated forever.
struct PeriodicTail {
  std::vector<mpz_class> preperiod;
  std::vector<mpz_class> period;
  mpz_class digit(size_t i) const {  // zero-based position
    if (i < preperiod.size()) return preperiod[i];
    return period[(i - preperiod.size()) % period.size()];
  }
};

// Detects the eventually periodic structure of a quadratic surd's expansion
// by tracking exact Gauss-map states. max_steps caps the search.
PeriodicTail detect_period(const QuadraticSurd& x, size_t max_steps = 100000);

// Lazily produced digit stream with memoization; produce(i) returns the
// zero-based i-th digit or nullopt when a finite expansion has ended.
// Memoization is guarded by a mutex and transparent to callers.
class CFExpansion {
 public:
  enum class Source { finite_rational, periodic, digit_list, stream };

  // Empty expansion; produces no digits until replaced.
  CFExpansion() = default;

  static CFExpansion from_exact(const NumberValue& x);
  static CFExpansion from_digits(std::vector<mpz_class> digits);
  static CFExpansion from_periodic(PeriodicTail tail);
  static CFExpansion from_stream(std::function<mpz_class(size_t)> producer);

  Source source() const { return source_; }
  // Zero-based digit access (digit(0) is a_1).
  std::optional<mpz_class> digit(size_t i) const;
  std::vector<mpz_class> prefix(size_t n) const;
  bool finite() const { return source_ == Source::finite_rational ||
                               source_ == Source::digit_list; }

 private:
  Source source_ = Source::digit_list;
  std::shared_ptr<struct CFExpansionState> state_;
};

}  // namespace latorb

#endif
