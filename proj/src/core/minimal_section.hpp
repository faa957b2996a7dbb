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

#ifndef LATORB_CORE_MINIMAL_SECTION_HPP
#define LATORB_CORE_MINIMAL_SECTION_HPP

#include <optional>
#include <vector>

#include "core/continued_fraction.hpp"
#include "core/lattice.hpp"

namespace latorb {

// Intrinsic coordinates of a consecutive minimal pair:
// x = -s1/r1, y = r2/s2, eps = sign(r1); (x, y) lies in
// U = (0,1)^2 u ([0,1/2] x {0}) u ({0} x [0,1/2]).
struct SectionPoint {
  NumberValue x, y;
  int eps = 1;

  nlohmann::ordered_json to_json() const;
};

// "phi,phi,+1" / "<numlit>,<numlit>[,<+1|-1>]"
SectionPoint section_point_parse(const std::string& s);

// Ordered pair of consecutive minimal vectors, a basis of the host lattice
// with 0 <= r2 < s2 and the sign convention applied (r negated when r2 = 0
// and r1 s1 > 0).
struct MinimalPair {
  Vec2 r, s;
  PlanarLattice host;
};

// True iff no nonzero lattice vector lies in the closed box R(|v1|, |v2|)
// except those matching both coordinate magnitudes. The enumeration bound
// is complete: any w in the box has integer coordinates (i, j) = adj(B) w,
// so |i| <= |b11||v1| + |b01||v2| and |j| <= |b10||v1| + |b00||v2|.
// search_bound = 0 uses that derived bound; a positive value overrides it
// (and must dominate the derived bound to stay complete).
bool is_minimal(const PlanarLattice& lat, const Vec2& v, long search_bound = 0);

struct InitialPairResult {
  MinimalPair pair;
  // x = 0 at the seed point: an axis vector makes the chain terminal,
  // the boundary piece of U rather than an error.
  bool axis_degenerate = false;
};

// Consecutive minimal pair with the smallest |s2| found by enumerating
// candidate vectors by increasing |second coordinate| (ties by |first|),
// certified by minimality checks plus the empty-open-rectangle property.
InitialPairResult initial_pair(const PlanarLattice& lat);

SectionPoint section_coords(const MinimalPair& p);

// The step (r, s) -> (s, r + floor(1/x) s). Requires s1 != 0 (x != 0).
MinimalPair next_minimal(const MinimalPair& p);

// Forward Gauss extension T(x,y) = ({1/x}, 1/(floor(1/x)+y)) on
// (0,1)^2 u ((0,1/2] x {0}), and its inverse S(a,b) = (1/(a+floor(1/b)), {1/b})
// on (0,1)^2 u ({0} x (0,1/2]). Exact arguments only. A rational x with 1/x
// integral maps to the boundary ({1/x} = 0); that output is legal.
std::pair<NumberValue, NumberValue> gauss_T(const NumberValue& x,
                                            const NumberValue& y);
std::pair<NumberValue, NumberValue> gauss_S(const NumberValue& a,
                                            const NumberValue& b);

// Basis [[eps, -eps x], [y/(1+xy), 1/(1+xy)]]; the returned pair are its
// columns and reproduce sp under section_coords.
std::pair<PlanarLattice, MinimalPair> reconstruct_lattice(const SectionPoint& sp);

struct ChainStep {
  size_t n = 0;
  SectionPoint sp;
  Vec2 r, s;
};

struct SectionChain {
  std::vector<ChainStep> steps;
  bool terminal = false;  // chain hit x = 0 (axis vector)
  std::string to_json_lines() const;
};

// Chain of section points from initial_pair, depth next_minimal steps or
// until the x = 0 boundary.
SectionChain section_chain(const PlanarLattice& lat, size_t depth);

struct PrecompactReport {
  enum class Verdict { certified, bounded_to_depth, divergent_rational };
  Verdict verdict = Verdict::bounded_to_depth;
  std::string detail;
  mpz_class max_digit_x, max_digit_y;
  std::vector<mpz_class> digits_x, digits_y;
  std::optional<PeriodicTail> period_x, period_y;
  SectionPoint seed;

  bool certified() const { return verdict == Verdict::certified; }
  nlohmann::ordered_json to_json() const;
};

// Expands the seed pair's coordinates to `depth` digits. Quadratic-surd
// coordinates yield a genuine periodicity certificate (digit bound holds at
// every depth); a rational coordinate means the orbit diverges.
PrecompactReport precompact_test(const PlanarLattice& lat, size_t depth);

// Incremental exact chain walker carrying the flow time of each section
// hit: g_{t_n} Lambda = M(x_n, y_n) Z^2 with t_n = -log|r1(n)|.
class SectionChainWalker {
 public:
  explicit SectionChainWalker(const PlanarLattice& lat);

  const MinimalPair& pair() const { return pair_; }
  const SectionPoint& point() const { return point_; }
  size_t index() const { return n_; }
  const BigFloat& time() const { return t_; }
  bool terminal() const { return point_.x.is_zero(); }

  // Advances one section step; false at the terminal boundary.
  bool step();

 private:
  MinimalPair pair_;
  SectionPoint point_;
  size_t n_ = 0;
  BigFloat t_;
};

}  // namespace latorb

#endif
