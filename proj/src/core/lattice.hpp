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

#ifndef LATORB_CORE_LATTICE_HPP
#define LATORB_CORE_LATTICE_HPP

#include <optional>
#include <string>

#include "core/group_element.hpp"
#include "core/matrix.hpp"

namespace latorb {

// Unimodular planar lattice given by an ordered basis (columns of a 2x2
// matrix). Orientation is normalized to det +1 at construction by negating
// the first column when needed; that leaves the lattice unchanged and is
// recorded in the provenance tag.
class PlanarLattice {
 public:
  PlanarLattice(Mat2 basis, std::string provenance);

  const Mat2& basis() const { return basis_; }
  const std::string& provenance() const { return provenance_; }
  bool is_exact() const { return basis_.is_exact(); }

  Vec2 vector_at(const mpz_class& i, const mpz_class& j) const;

  // Exact membership: solves integer coordinates; only for exact bases.
  std::optional<std::pair<mpz_class, mpz_class>> coords_of(const Vec2& v) const;

  nlohmann::ordered_json to_json() const;
  static PlanarLattice from_json(const nlohmann::ordered_json& j);

 private:
  Mat2 basis_;
  std::string provenance_;
};

// The lattice [[1, alpha], [0, 1]] Z^2, i.e. columns (1,0) and (alpha,1).
PlanarLattice lattice_from_alpha(const NumberValue& alpha);

PlanarLattice standard_lattice();

// Left action of a group element on a lattice. Exact stays exact; any float
// operand yields a float basis. Errors out when the resulting entry error
// bounds exceed 2^-8.
PlanarLattice act(const GroupElement& g, const PlanarLattice& lat);

// Exact lattice equality: B1^{-1} B2 is integral with determinant +-1.
bool same_lattice_exact(const PlanarLattice& a, const PlanarLattice& b);

// Numeric distance after basis alignment: rounds B1^{-1} B2 to an integer
// matrix g and returns max-entry |B1 g - B2| when det g = +-1, infinity
// otherwise. Symmetrized over both orders.
double aligned_distance(const PlanarLattice& a, const PlanarLattice& b);

// Numeric basis of a lattice at working precision.
struct NumericBasis {
  BigFloat b00, b01, b10, b11;  // columns (b00,b10), (b01,b11)
};
NumericBasis numeric_basis(const PlanarLattice& lat, unsigned prec = 0);

// Lattice literals: "zsquared", "alpha:<number literal>",
// "reconstruct:<x>,<y>,<+1|-1>".
PlanarLattice lattice_parse(const std::string& literal);

}  // namespace latorb

#endif
