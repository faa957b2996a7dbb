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

#ifndef LATORB_CORE_DIRICHLET_HPP
#define LATORB_CORE_DIRICHLET_HPP

#include "core/continued_fraction.hpp"
#include "core/minimal_section.hpp"
#include "core/norm_body.hpp"

namespace latorb {

struct DiConfig {
  double t0 = 5.0;
  double t_max = 40.0;
  double step = 1e-3;
  double delta_factor = 3.0;  // delta = factor * error_bound
  int hits_required = 10;
  int windows_required = 5;
  double window_gap = 0.05;   // qualifying times farther apart start a new window
  size_t tail_depth = 60;     // digit window for tail coordinates

  nlohmann::ordered_json to_json() const;
};

struct DiVerdict {
  std::string verdict;  // "improvable (heuristic)" etc.
  double sup_tail = 0;
  double margin = 0;       // r_hat - sup_tail
  double c_estimate = 0;   // sup_tail / r_hat
  double r_hat = 0;
  double delta = 0;
  int near_hits = 0;
  int windows = 0;
  size_t sample_count = 0;

  nlohmann::ordered_json to_json(const nlohmann::ordered_json& config) const;
};

// Scans lambda_1 along t -> g_t Lambda_alpha over [t0, t_max] through the
// minimal-vector section: each segment between section hits is sampled as
// g_s M(x_n, y_n) Z^2 with entries of bounded size, so the horizon is not
// limited by precision. The verdict policy is finite-horizon heuristic:
//   improvable     when sup_tail <= r_hat - delta,
//   non-improvable when lambda_1 enters [r_hat - delta, r_hat] at >= K
//                  sampled times spread over >= W separated windows,
//   inconclusive   otherwise.
// Requires the norm's critical radius to be computed already.
DiVerdict di_test(const NumberValue& alpha, const NormBody& nu,
                  const DiConfig& cfg);

// Same test driven by a digit stream (synthesized alphas). The stream must
// start with digit 2, which anchors the initial minimal pair of
// Lambda_alpha at flow time zero.
DiVerdict di_test(const CFExpansion& alpha_digits, const NormBody& nu,
                  const DiConfig& cfg);

}  // namespace latorb

#endif
