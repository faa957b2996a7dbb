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

#ifndef LATORB_CORE_NORM_BODY_HPP
#define LATORB_CORE_NORM_BODY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "core/group_element.hpp"
#include "core/lattice.hpp"

namespace latorb {

// Critical data attached to a norm once the critical radius has been
// computed; write-once.
struct CriticalData {
  BigFloat r_hat;
  double error_bound = 0.0;
  std::shared_ptr<PlanarLattice> argmax;
  double t_cap = 0.0;
  nlohmann::ordered_json config_echo;
};

// Symmetric convex norm on the plane. Copies share the underlying state
// (including caches), so computing critical data through one handle makes
// it visible through all copies.
class NormBody {
 public:
  enum class Kind { sup, euclidean, pnorm, polygon, conjugated };

  static NormBody sup();
  static NormBody euclidean();
  static NormBody pnorm(double p);
  // Vertices of a centrally symmetric convex polygon, any order.
  static NormBody polygon(std::vector<Vec2> vertices);
  // Regular hexagon with unit circumradius, vertices at angles k*pi/3.
  static NormBody hexagon();
  static NormBody conjugated(const NormBody& base, const GroupElement& g);

  Kind kind() const;
  std::string kind_name() const;

  BigFloat evaluate(const BigFloat& x, const BigFloat& y) const;
  BigFloat evaluate(const Vec2& v) const;

  // Equivalence constants against the Euclidean norm, from sampling the
  // unit circle with a safety factor of 2: c_lo * |v| <= nu(v) <= c_hi * |v|.
  double c_lo() const;
  double c_hi() const;

  bool has_critical() const;
  const CriticalData& critical() const;
  void set_critical(CriticalData data) const;

  bool has_locus() const;
  const std::vector<PlanarLattice>& locus_samples() const;
  void set_locus_samples(std::vector<PlanarLattice> samples) const;

  // For conjugated norms: the conjugating element.
  const GroupElement* conjugator() const;
  const NormBody* base() const;

  nlohmann::ordered_json to_json() const;
  static NormBody from_json(const nlohmann::ordered_json& j);
  // "sup" | "euclidean" | "hexagon" | "pnorm:<p>" | inline JSON object.
  static NormBody parse(const std::string& spec);

 private:
  NormBody() = default;
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace latorb

#endif
