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

#ifndef LATORB_CORE_SHORTEST_VECTOR_HPP
#define LATORB_CORE_SHORTEST_VECTOR_HPP

#include <vector>

#include "core/lattice.hpp"
#include "core/norm_body.hpp"

namespace latorb {

struct ShortestResult {
  BigFloat value;
  mpz_class wi, wj;  // coordinates of a minimizer in the lattice's basis
};

// Minimal nu-norm over nonzero lattice vectors: Lagrange-Gauss reduction in
// the Euclidean inner product, then exhaustive search over the box implied
// by the norm's equivalence constants (inflated for rounding slack).
ShortestResult shortest_vector(const PlanarLattice& lat, const NormBody& nu);

// Same, for a numeric basis directly (hot path helper).
ShortestResult shortest_vector_numeric(const NumericBasis& basis,
                                       const NormBody& nu);

struct OrbitSample {
  BigFloat t;
  BigFloat lambda1;
  mpz_class wi, wj;
};

struct OrbitScanResult {
  std::vector<OrbitSample> samples;
  size_t inf_index = 0;
  size_t sup_index = 0;
  // Grid inf sharpened by golden-section descent around the grid minimizer.
  BigFloat refined_inf;
  BigFloat refined_inf_t;
  bool divergence_suspected = false;

  const OrbitSample& inf() const { return samples[inf_index]; }
  const OrbitSample& sup() const { return samples[sup_index]; }

  std::string to_csv(const nlohmann::ordered_json& config) const;
  nlohmann::ordered_json to_json(const nlohmann::ordered_json& config) const;
};

// lambda_1 along t -> g_t lat sampled on a uniform grid. A finite-horizon
// heuristic: grid inf/sup say nothing beyond the sampled window.
OrbitScanResult orbit_min_scan(const PlanarLattice& lat, const NormBody& nu,
                               const BigFloat& t_lo, const BigFloat& t_hi,
                               const BigFloat& step);

}  // namespace latorb

#endif
