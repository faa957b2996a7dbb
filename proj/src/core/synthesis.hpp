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

#ifndef LATORB_CORE_SYNTHESIS_HPP
#define LATORB_CORE_SYNTHESIS_HPP

#include <optional>
#include <vector>

#include "core/continued_fraction.hpp"
#include "core/minimal_section.hpp"

namespace latorb {

// Digit streams of a target section point with quadratic-surd coordinates:
// b from x, c from y, plus the uniform digit bound M certified by the
// periodicity of both expansions.
struct TargetDigits {
  PeriodicTail b, c;
  mpz_class bound;  // M

  static TargetDigits from_target(const SectionPoint& target);
  mpz_class b_digit(size_t j) const { return b.digit(j - 1); }  // 1-based
  mpz_class c_digit(size_t j) const { return c.digit(j - 1); }
};

// Default block positions m_k = 2k^3: even, gaps m_k - m_{k-1} > 2k, and
// vanishing density of block-occupied digit positions.
std::vector<long> sparse_positions(size_t count);

// Validates evenness, the gap condition and decreasing density peaks;
// throws on violation.
void validate_positions(const std::vector<long>& positions);

// Fraction of digit positions in [1, n] covered by blocks.
double position_density(const std::vector<long>& positions, long n);

// Block k (2k digits, (c_k, ..., c_1, b_1, ..., b_k)) occupies digit
// positions [m_k - k + 1, m_k + k]. The forced digit at 1-based position p,
// or nullopt when p is free.
std::optional<mpz_class> block_digit_at(const std::vector<long>& positions,
                                        const TargetDigits& digits, long p);

struct SynthesisPlan {
  long L = 2;                    // digit cap; >= max(M, 2)
  size_t blocks = 6;             // K, when positions are generated
  std::vector<long> positions;   // optional override
  long filler = 1;

  nlohmann::ordered_json to_json() const;
};

// A badly approximable number given by its digit stream: d_1 = 2, filler
// digits elsewhere, block B_k written at [m_k - k + 1, m_k + k]. All digits
// are bounded by max(L, 2), so the value is badly approximable with an
// explicit bound.
class SynthesizedAlpha {
 public:
  SynthesizedAlpha(TargetDigits target, SynthesisPlan plan);

  const CFExpansion& digits() const { return digits_; }
  const std::vector<long>& positions() const { return positions_; }
  const TargetDigits& target_digits() const { return target_; }
  const SynthesisPlan& plan() const { return plan_; }
  mpz_class digit_at(long p) const;  // 1-based
  std::pair<long, long> block_span(size_t k) const;

  // Exact finite surrogate [0; d_1, ..., d_N].
  mpq_class convergent_surrogate(size_t N) const;

  nlohmann::ordered_json to_json(size_t prefix_len = 40) const;

 private:
  TargetDigits target_;
  SynthesisPlan plan_;
  std::vector<long> positions_;
  CFExpansion digits_;
};

SynthesizedAlpha synthesize(const SectionPoint& target, SynthesisPlan plan);

struct CheckpointDistance {
  size_t k = 0;
  long n = 0;          // = m_k
  double distance = 0; // entrywise max between normalized bases
  double tail_error = 0;
};

// At each checkpoint n = m_k the orbit's normalized lattice is
// M(x_n, y_n) Z^2 with x_n = [0; d_{n+1}, ...] (tail truncated at depth
// tail_depth, error <= 2^(1-tail_depth)) and y_n = [0; d_n, ..., d_1]
// exactly; the distance to the target's M(x, y) Z^2 is reported per k.
std::vector<CheckpointDistance> verify_limit_point(const SynthesizedAlpha& sa,
                                                   const SectionPoint& target,
                                                   size_t checkpoints,
                                                   size_t tail_depth);

nlohmann::ordered_json verify_report(const SynthesizedAlpha& sa,
                                     const std::vector<CheckpointDistance>& cps);

}  // namespace latorb

#endif
