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

#ifndef LATORB_CORE_CRITICAL_RADIUS_HPP
#define LATORB_CORE_CRITICAL_RADIUS_HPP

#include "core/norm_body.hpp"
#include "core/shortest_vector.hpp"

namespace latorb {

struct OptimizerConfig {
  int grid = 48;            // coarse nodes per axis
  int nm_iterations = 200;  // simplex iterations per restart
  int nm_restarts = 3;
  double polish_h = 1e-4;   // final coordinate-wise bracket width
  int locus_theta_grid = 64;
  int threads = 4;

  nlohmann::ordered_json to_json() const;
  static OptimizerConfig from_json(const nlohmann::ordered_json& j);
};

// Max of lambda_1 over the family R(theta) g_t u_x Z^2 with x in [0,1],
// t in [0, t_cap], theta in [0, pi). Every unimodular lattice with
// lambda_1 above the incumbent appears in the family for some t <=
// log(4 c_hi / c_lo): its second successive minimum is a primitive vector
// of Euclidean length in [1, 2 / (sqrt(3) lambda_1_2)], and lambda_1_2 >=
// incumbent / c_hi >= c_lo-level, so e^t stays under 4 c_hi / c_lo.
// Coarse grid, then Nelder-Mead refinement, then coordinate-wise
// golden-section polish. The error bound combines the node-local grid
// modulus of continuity with the final polish resolution.
CriticalData critical_radius(const NormBody& nu, const OptimizerConfig& cfg);

// Lattices of the search family with lambda_1 >= r_hat - tol, one
// refinement per theta slice, de-duplicated by basis alignment and
// re-verified by shortest_vector. Errors out when empty (tol below the
// optimizer's resolution).
std::vector<PlanarLattice> locus_sample(const NormBody& nu, double tol,
                                        const OptimizerConfig& cfg);

// nu composed with g^{-1}; critical value is unchanged and cached locus
// data maps by g.
NormBody conjugate_norm(const NormBody& nu, const GroupElement& g);

// g with g * argmax(nu) = target, as basis matrices: g = B_target B_0^{-1}.
GroupElement conjugator_to_target(const NormBody& nu,
                                  const PlanarLattice& target);

}  // namespace latorb

#endif
