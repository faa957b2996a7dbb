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

#include "doctest.h"

#include "core/critical_radius.hpp"
#include "core/dirichlet.hpp"
#include "core/errors.hpp"
#include "support/oracles.hpp"

using namespace latorb;

namespace {

BigFloat bf(double v) { return BigFloat::from_double(v); }

OptimizerConfig small_config() {
  OptimizerConfig cfg;
  cfg.grid = 14;
  cfg.nm_iterations = 80;
  cfg.nm_restarts = 2;
  cfg.locus_theta_grid = 12;
  return cfg;
}

}  // namespace

TEST_CASE("norm evaluation basics") {
  NormBody sup = NormBody::sup();
  CHECK(sup.evaluate(bf(3), bf(-4)).cmp(bf(4)) == 0);
  NormBody euc = NormBody::euclidean();
  CHECK(euc.evaluate(bf(3), bf(4)).close_to(bf(5), 1e-60));
  NormBody one = NormBody::pnorm(1);
  CHECK(one.evaluate(bf(3), bf(-4)).close_to(bf(7), 1e-60));
  CHECK_THROWS_AS(NormBody::pnorm(0.5), Error);

  NormBody hex = NormBody::hexagon();
  CHECK(hex.evaluate(bf(1), bf(0)).close_to(bf(1), 1e-60));
  // Edge midpoint of the top face sits on the boundary.
  CHECK(hex.evaluate(bf(0), bf(std::sqrt(3.0) / 2)).close_to(bf(1), 1e-12));
  // Homogeneity and symmetry spot checks.
  auto rng = oracle::seeded_rng(5);
  std::uniform_real_distribution<double> d(-3, 3);
  for (int i = 0; i < 50; ++i) {
    double x = d(rng), y = d(rng), lam = d(rng);
    BigFloat v = hex.evaluate(bf(x), bf(y));
    CHECK(hex.evaluate(bf(-x), bf(-y)).close_to(v, 1e-12));
    CHECK(hex.evaluate(bf(lam * x), bf(lam * y))
              .close_to(v * bf(std::fabs(lam)), 1e-10));
    // Triangle inequality against a second point.
    double x2 = d(rng), y2 = d(rng);
    BigFloat v2 = hex.evaluate(bf(x2), bf(y2));
    BigFloat vs = hex.evaluate(bf(x + x2), bf(y + y2));
    CHECK(vs.to_double() <= v.to_double() + v2.to_double() + 1e-12);
  }
}

TEST_CASE("square polygon equals the sup norm") {
  std::vector<Vec2> square = {{NumberValue(1), NumberValue(1)},
                              {NumberValue(-1), NumberValue(1)},
                              {NumberValue(-1), NumberValue(-1)},
                              {NumberValue(1), NumberValue(-1)}};
  NormBody poly = NormBody::polygon(std::move(square));
  NormBody sup = NormBody::sup();
  auto rng = oracle::seeded_rng(9);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int i = 0; i < 100; ++i) {
    double x = d(rng), y = d(rng);
    CHECK(poly.evaluate(bf(x), bf(y)).close_to(sup.evaluate(bf(x), bf(y)), 1e-50));
  }
}

TEST_CASE("polygon validation") {
  std::vector<Vec2> not_symmetric = {{NumberValue(1), NumberValue(0)},
                                     {NumberValue(0), NumberValue(1)},
                                     {NumberValue(-1), NumberValue(0)},
                                     {NumberValue(0), NumberValue(-2)}};
  CHECK_THROWS_AS(NormBody::polygon(std::move(not_symmetric)), Error);
  std::vector<Vec2> too_few = {{NumberValue(1), NumberValue(0)},
                               {NumberValue(-1), NumberValue(0)}};
  CHECK_THROWS_AS(NormBody::polygon(std::move(too_few)), Error);
}

TEST_CASE("equivalence constants bracket the unit circle") {
  NormBody hex = NormBody::hexagon();
  double lo = hex.c_lo(), hi = hex.c_hi();
  CHECK(lo > 0);
  CHECK(lo < 1.0);          // safety factor halves the true min (= 1)
  CHECK(hi > 2.0 / std::sqrt(3.0));
  auto rng = oracle::seeded_rng(13);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int i = 0; i < 100; ++i) {
    double x = d(rng), y = d(rng);
    double n2 = std::hypot(x, y);
    double nv = hex.evaluate(bf(x), bf(y)).to_double();
    CHECK(nv >= lo * n2 - 1e-12);
    CHECK(nv <= hi * n2 + 1e-12);
  }
}

TEST_CASE("conjugated norms evaluate through g^{-1}") {
  NormBody euc = NormBody::euclidean();
  NormBody same = NormBody::conjugated(euc, GroupElement::identity());
  CHECK(same.evaluate(bf(0.3), bf(-1.2)).close_to(euc.evaluate(bf(0.3), bf(-1.2)), 1e-60));

  auto rng = oracle::seeded_rng(17);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int i = 0; i < 20; ++i) {
    GroupElement g = GroupElement::diagonal_flow(bf(d(rng))) *
                     GroupElement::upper_shear(NumberValue(bf(d(rng)))) *
                     GroupElement::lower_shear(NumberValue(bf(d(rng))));
    NormBody conj = NormBody::conjugated(euc, g);
    // lambda_1 is preserved: lambda_{1,nu o g^{-1}}(g Lambda) = lambda_{1,nu}(Lambda).
    double x = d(rng), t = d(rng) * 0.5, th = d(rng);
    PlanarLattice lat = act(GroupElement::rotation(bf(th)),
                            act(GroupElement::diagonal_flow(bf(t)),
                                act(GroupElement::upper_shear(NumberValue(bf(x))),
                                    standard_lattice())));
    PlanarLattice moved = act(g, lat);
    BigFloat a = shortest_vector(moved, conj).value;
    BigFloat b = shortest_vector(lat, euc).value;
    CHECK((a - b).abs().to_double() <= std::ldexp(1.0, -64));
  }
}

TEST_CASE("norm JSON round trip") {
  NormBody hex = NormBody::hexagon();
  NormBody back = NormBody::from_json(hex.to_json());
  CHECK(back.kind() == NormBody::Kind::polygon);
  CHECK(back.evaluate(bf(0.37), bf(0.81))
            .close_to(hex.evaluate(bf(0.37), bf(0.81)), 1e-50));
  NormBody p3 = NormBody::parse("pnorm:3");
  CHECK(NormBody::from_json(p3.to_json()).evaluate(bf(1), bf(1))
            .close_to(p3.evaluate(bf(1), bf(1)), 1e-60));
  CHECK_THROWS_AS(NormBody::parse("frobnorm"), Error);
}

TEST_CASE("critical radius of the sup norm at small config") {
  NormBody sup = NormBody::sup();
  CriticalData cd = critical_radius(sup, small_config());
  CHECK(std::fabs(cd.r_hat.to_double() - 1.0) < 1e-4);
  CHECK(cd.error_bound > 0);
  CHECK(cd.argmax != nullptr);
  // The cache is write-once and shared.
  CHECK(sup.has_critical());
  CHECK_THROWS_AS(sup.set_critical(cd), Error);
}

TEST_CASE("optimizer determinism: identical config, identical bits") {
  NormBody a = NormBody::sup();
  NormBody b = NormBody::sup();
  OptimizerConfig cfg = small_config();
  cfg.threads = 3;
  CriticalData ca = critical_radius(a, cfg);
  CriticalData cb = critical_radius(b, cfg);
  CHECK(ca.r_hat.to_hex_string() == cb.r_hat.to_hex_string());
  CHECK(ca.error_bound == cb.error_bound);
}

TEST_CASE("lambda1 never exceeds the critical radius estimate") {
  NormBody sup = NormBody::sup();
  CriticalData cd = critical_radius(sup, small_config());
  auto rng = oracle::seeded_rng(19);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int i = 0; i < 100; ++i) {
    PlanarLattice lat = act(GroupElement::rotation(bf(d(rng) * 3)),
                            act(GroupElement::diagonal_flow(bf(d(rng))),
                                act(GroupElement::upper_shear(NumberValue(bf(d(rng)))),
                                    standard_lattice())));
    double lam = shortest_vector(lat, sup).value.to_double();
    CHECK(lam <= cd.r_hat.to_double() + 3 * cd.error_bound);
  }
}

TEST_CASE("euclidean locus is a rotation family (many distinct samples)") {
  NormBody euc = NormBody::euclidean();
  OptimizerConfig cfg = small_config();
  // Not a multiple of 3: the hexagonal packing lattice repeats under
  // rotation by pi/3, so slice counts divisible by 3 alias onto exact
  // repeats of the same lattice.
  cfg.locus_theta_grid = 64;
  critical_radius(euc, cfg);
  auto samples = locus_sample(euc, 1e-3, cfg);
  CHECK(samples.size() >= 20);
  // Distinct rotations: pairwise aligned distances stay macroscopic.
  size_t distinct = 0;
  for (size_t a = 0; a < samples.size(); ++a) {
    bool dup = false;
    for (size_t b = 0; b < a; ++b)
      if (aligned_distance(samples[a], samples[b]) < 1e-2) dup = true;
    if (!dup) ++distinct;
  }
  CHECK(distinct >= 20);
  // Every sample is genuinely critical.
  double r_hat = euc.critical().r_hat.to_double();
  for (const auto& lat : samples)
    CHECK(shortest_vector(lat, euc).value.to_double() >= r_hat - 1e-3);
}

TEST_CASE("locus of the sup norm contains the standard lattice") {
  NormBody sup = NormBody::sup();
  OptimizerConfig cfg = small_config();
  critical_radius(sup, cfg);
  auto samples = locus_sample(sup, 1e-3, cfg);
  CHECK(!samples.empty());
  // The locus is flat along the shear direction, so the sampler can sit
  // anywhere on it; some sample must still be essentially Z^2.
  double best = 1e9;
  for (const auto& lat : samples)
    best = std::min(best, aligned_distance(lat, standard_lattice()));
  CHECK(best < 1e-2);
}

TEST_CASE("di_test verdicts on rational and golden alphas (sup norm)") {
  NormBody sup = NormBody::sup();
  critical_radius(sup, small_config());
  DiConfig cfg;
  cfg.t0 = 5;
  cfg.t_max = 30;
  cfg.step = 1e-2;
  DiVerdict v25 = di_test(NumberValue::rational(2, 5), sup, cfg);
  CHECK(v25.verdict == "improvable (heuristic)");
  CHECK(v25.sup_tail < 0.1);
  DiVerdict vphi = di_test(NumberValue::parse("phi"), sup, cfg);
  CHECK(vphi.verdict == "improvable (heuristic)");
  CHECK(vphi.sup_tail < 0.95);
  CHECK(vphi.c_estimate < 1.0);
  // Without critical data the test refuses to run.
  NormBody fresh = NormBody::euclidean();
  CHECK_THROWS_AS(di_test(NumberValue::parse("phi"), fresh, cfg), Error);
}
