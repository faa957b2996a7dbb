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

#ifndef LATORB_CORE_DIMENSION_HPP
#define LATORB_CORE_DIMENSION_HPP

#include <optional>
#include <vector>

#include "core/continued_fraction.hpp"
#include "core/synthesis.hpp"

namespace latorb {

// Exact conditional measure |{alpha in I(k): z_n(alpha) >= x}| / |I(k)|
// = (1 - x) / (sigma_n x + 1) with sigma_n = q_{n-1}/q_n of the cylinder.
mpq_class conditional_tail(std::span<const mpz_class> index, const mpq_class& x);

// Exact |{alpha in I(k): x <= z_n <= y}| / |I(k)|
// = (y - x)(sigma_n + 1) / ((sigma_n x + 1)(sigma_n y + 1)), 0 < x < y < 1.
mpq_class conditional_band(std::span<const mpz_class> index, const mpq_class& x,
                           const mpq_class& y);

// Per-level density lower bound: L/(L+2) on free levels, 1/(4(M+1)^2) on
// levels forced by a block digit. Level m refines by fixing digit position
// m + 1; the case is decided by the block span map. Requires L > M.
struct ThetaBound {
  mpq_class value;
  bool forced = false;
};
ThetaBound theta_bound(long m, long L, const mpz_class& M,
                       const std::vector<long>& positions);

struct DimBoundReport {
  double asymptotic = 0;  // 1 - log((L+2)/L)/log 2
  struct Row {
    long m = 0;
    long free_count = 0;    // #I_m
    long forced_count = 0;  // #J_m
    mpq_class theta_lo;     // bound at level m
    double curve = 0;       // finite-horizon dimension bound
    double block_density = 0;
  };
  std::vector<Row> rows;
  double curve_at_max = 0;
  double running_max_tail = 0;  // max of the deficit over [m/2, m] at m_max

  nlohmann::ordered_json to_json(const nlohmann::ordered_json& config) const;
  std::string to_csv(const nlohmann::ordered_json& config) const;
};

// Finite-horizon dimension lower-bound curve
//   curve(m) = 1 - [sum_{j=1}^{m-1} -log theta_j^lo] / (m log 2)
// together with its asymptotic limit under vanishing block density.
DimBoundReport dim_lower_bound(long L, const mpz_class& M,
                               const std::vector<long>& positions, long m_max);

struct CantorLevel {
  long m = 0;
  std::vector<CylinderInterval> intervals;  // taken as closed
  std::optional<mpq_class> theta_hat_min;   // min density of the refinement into this level
  mpq_class diam;                           // max interval length
  bool forced = false;                      // this level was reached by a forced digit
};

struct CantorAudit {
  std::vector<CantorLevel> levels;  // E_0 .. E_{m_max}
  bool densities_pass = false;      // every audited theta_hat >= theta_lo
  bool diam_pass = false;           // diam_m <= 2^-m at every level
  long total_intervals = 0;

  nlohmann::ordered_json to_json(const nlohmann::ordered_json& config) const;
};

// Materializes the nested family E_m as exact closed cylinders: E_1 fixes
// the first digit to 2, free levels branch over digits 1..L, forced levels
// take the block digit. Exact per-interval densities are verified against
// the theta lower bounds. target == nullptr means no blocks. Interval
// count is capped at 10^6.
CantorAudit audit_family(long L, const TargetDigits* target,
                         const std::vector<long>& positions, long m_max);

}  // namespace latorb

#endif
