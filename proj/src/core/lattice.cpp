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

#include "core/lattice.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/minimal_section.hpp"

namespace latorb {

namespace {

bool det_is(const Mat2& m, long target) {
  NumberValue d = m.det();
  if (m.is_exact()) return d == NumberValue(target);
  BigFloat df = d.to_bigfloat();
  double tol = std::ldexp(1.0, -static_cast<int>(df.prec() / 2));
  return df.close_to(BigFloat::from_long(target, df.prec()), tol);
}

}  // namespace

PlanarLattice::PlanarLattice(Mat2 basis, std::string provenance)
    : basis_(std::move(basis)), provenance_(std::move(provenance)) {
  for (int i = 0; i < 2; ++i) {
    Vec2 c = basis_.col(i);
    if (c.x.is_exact() && c.y.is_exact() && c.x.is_zero() && c.y.is_zero())
      fail(ErrorCode::invalid_argument, "basis vector is zero");
  }
  if (det_is(basis_, 1)) return;
  if (det_is(basis_, -1)) {
    // Negating a column preserves the lattice and fixes orientation.
    basis_.m00 = -basis_.m00;
    basis_.m10 = -basis_.m10;
    provenance_ += "|flipped-col0";
    return;
  }
  fail(ErrorCode::invalid_argument, "basis determinant is not +-1");
}

Vec2 PlanarLattice::vector_at(const mpz_class& i, const mpz_class& j) const {
  NumberValue vi{i}, vj{j};
  return {vi * basis_.m00 + vj * basis_.m01, vi * basis_.m10 + vj * basis_.m11};
}

std::optional<std::pair<mpz_class, mpz_class>> PlanarLattice::coords_of(
    const Vec2& v) const {
  if (!is_exact() || !v.x.is_exact() || !v.y.is_exact())
    fail(ErrorCode::domain, "membership test needs exact data");
  // (i, j) = B^{-1} v; det is +1 after normalization.
  NumberValue i = basis_.m11 * v.x - basis_.m01 * v.y;
  NumberValue j = basis_.m00 * v.y - basis_.m10 * v.x;
  if (!(i - NumberValue(i.floor_exact())).is_zero()) return std::nullopt;
  if (!(j - NumberValue(j.floor_exact())).is_zero()) return std::nullopt;
  return std::make_pair(i.floor_exact(), j.floor_exact());
}

nlohmann::ordered_json PlanarLattice::to_json() const {
  nlohmann::ordered_json j;
  j["basis"] = {{"m00", basis_.m00.to_json()},
                {"m01", basis_.m01.to_json()},
                {"m10", basis_.m10.to_json()},
                {"m11", basis_.m11.to_json()}};
  j["provenance"] = provenance_;
  return j;
}

PlanarLattice PlanarLattice::from_json(const nlohmann::ordered_json& j) {
  const auto& b = j.at("basis");
  Mat2 m{NumberValue::from_json(b.at("m00")), NumberValue::from_json(b.at("m01")),
         NumberValue::from_json(b.at("m10")), NumberValue::from_json(b.at("m11"))};
  return PlanarLattice(std::move(m), j.value("provenance", "json"));
}

PlanarLattice lattice_from_alpha(const NumberValue& alpha) {
  Mat2 m{NumberValue(1), alpha, NumberValue(0), NumberValue(1)};
  return PlanarLattice(std::move(m), "Lambda_alpha");
}

PlanarLattice standard_lattice() {
  return PlanarLattice(Mat2::identity(), "Z^2");
}

PlanarLattice act(const GroupElement& g, const PlanarLattice& lat) {
  Mat2 out = g.matrix() * lat.basis();
  if (!out.is_exact()) {
    const double cap = std::ldexp(1.0, -8);
    for (const NumberValue* e : {&out.m00, &out.m01, &out.m10, &out.m11}) {
      if (e->is_exact()) continue;
      double err = e->as_bigfloat().err();
      if (!(err <= cap))
        fail(ErrorCode::precision, "basis error bound exceeds 2^-8 after act");
    }
  }
  return PlanarLattice(std::move(out), lat.provenance() + "|acted");
}

bool same_lattice_exact(const PlanarLattice& a, const PlanarLattice& b) {
  if (!a.is_exact() || !b.is_exact())
    fail(ErrorCode::domain, "exact equality needs exact bases");
  Mat2 t = a.basis().inverse() * b.basis();
  for (const NumberValue* e : {&t.m00, &t.m01, &t.m10, &t.m11}) {
    if (!(*e - NumberValue(e->floor_exact())).is_zero()) return false;
  }
  NumberValue d = t.det();
  return d == NumberValue(1) || d == NumberValue(-1);
}

namespace {

double one_sided_aligned_distance(const PlanarLattice& a,
                                  const PlanarLattice& b) {
  unsigned prec = default_precision();
  NumericBasis A = numeric_basis(a, prec), B = numeric_basis(b, prec);
  // g = round(A^{-1} B)
  BigFloat det = A.b00 * A.b11 - A.b01 * A.b10;
  if (det.is_zero()) return std::numeric_limits<double>::infinity();
  BigFloat i00 = A.b11 / det, i01 = -A.b01 / det;
  BigFloat i10 = -A.b10 / det, i11 = A.b00 / det;
  BigFloat t00 = i00 * B.b00 + i01 * B.b10;
  BigFloat t01 = i00 * B.b01 + i01 * B.b11;
  BigFloat t10 = i10 * B.b00 + i11 * B.b10;
  BigFloat t11 = i10 * B.b01 + i11 * B.b11;
  mpz_class g00 = t00.round_to_mpz(), g01 = t01.round_to_mpz();
  mpz_class g10 = t10.round_to_mpz(), g11 = t11.round_to_mpz();
  mpz_class gdet = g00 * g11 - g01 * g10;
  if (gdet != 1 && gdet != -1)
    return std::numeric_limits<double>::infinity();
  auto bf = [&](const mpz_class& z) { return BigFloat::from_mpz(z, prec); };
  BigFloat c00 = A.b00 * bf(g00) + A.b01 * bf(g10) - B.b00;
  BigFloat c10 = A.b10 * bf(g00) + A.b11 * bf(g10) - B.b10;
  BigFloat c01 = A.b00 * bf(g01) + A.b01 * bf(g11) - B.b01;
  BigFloat c11 = A.b10 * bf(g01) + A.b11 * bf(g11) - B.b11;
  double m = 0;
  for (const BigFloat* e : {&c00, &c10, &c01, &c11})
    m = std::max(m, std::fabs(e->to_double()));
  return m;
}

}  // namespace

double aligned_distance(const PlanarLattice& a, const PlanarLattice& b) {
  return std::min(one_sided_aligned_distance(a, b),
                  one_sided_aligned_distance(b, a));
}

NumericBasis numeric_basis(const PlanarLattice& lat, unsigned prec) {
  const Mat2& m = lat.basis();
  return {m.m00.to_bigfloat(prec), m.m01.to_bigfloat(prec),
          m.m10.to_bigfloat(prec), m.m11.to_bigfloat(prec)};
}

PlanarLattice lattice_parse(const std::string& literal) {
  if (literal == "zsquared" || literal == "Z2") return standard_lattice();
  if (literal.rfind("alpha:", 0) == 0)
    return lattice_from_alpha(NumberValue::parse(literal.substr(6)));
  if (literal.rfind("reconstruct:", 0) == 0) {
    SectionPoint sp = section_point_parse(literal.substr(12));
    return reconstruct_lattice(sp).first;
  }
  fail(ErrorCode::invalid_argument, "unknown lattice literal: " + literal);
}

}  // namespace latorb
