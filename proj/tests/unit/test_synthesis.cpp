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

#include "core/errors.hpp"
#include "core/synthesis.hpp"

using namespace latorb;

namespace {

SectionPoint phi_target() {
  return section_point_parse("phi,phi,+1");
}

SectionPoint sqrt2_target() {
  return section_point_parse("sqrt2m1,sqrt2m1,+1");
}

}  // namespace

TEST_CASE("sparse positions: defaults and validation") {
  auto m = sparse_positions(3);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 2);
  CHECK(m[1] == 16);
  CHECK(m[2] == 54);
  // Gap condition from the construction, m_k - m_{k-1} > 2k.
  CHECK(m[1] - m[0] == 14);
  CHECK(m[2] - m[1] == 38);
  // Density of occupied positions at the third block.
  CHECK(position_density(m, 54) == doctest::Approx((2.0 + 4.0) / 54.0));

  CHECK_THROWS_AS(validate_positions({3, 16}), Error);       // odd
  CHECK_THROWS_AS(validate_positions({2, 6}), Error);        // gap <= 2k
  CHECK_THROWS_AS(validate_positions({0}), Error);           // collides with d_1
  validate_positions({2, 16, 54});
}

TEST_CASE("target digits carry the certified bound") {
  TargetDigits td = TargetDigits::from_target(phi_target());
  CHECK(td.bound == 1);
  CHECK(td.b_digit(1) == 1);
  CHECK(td.c_digit(7) == 1);
  TargetDigits t2 = TargetDigits::from_target(sqrt2_target());
  CHECK(t2.bound == 2);
  CHECK_THROWS_AS(
      TargetDigits::from_target(section_point_parse("rational:1/3,phi,+1")),
      Error);
}

TEST_CASE("synthesized stream: golden target") {
  SynthesisPlan plan;
  plan.L = 2;
  plan.blocks = 2;
  SynthesizedAlpha sa = synthesize(phi_target(), plan);
  CHECK(sa.digit_at(1) == 2);
  for (long p = 2; p <= 200; ++p) CHECK(sa.digit_at(p) == 1);
  CHECK(sa.block_span(1) == std::pair<long, long>{2, 3});
  CHECK(sa.block_span(2) == std::pair<long, long>{15, 18});
  CHECK_THROWS_AS(sa.block_span(3), Error);
}

TEST_CASE("synthesized stream: sqrt2 target has 2-blocks in a 1-filler sea") {
  SynthesisPlan plan;
  plan.L = 3;
  plan.blocks = 4;
  SynthesizedAlpha sa = synthesize(sqrt2_target(), plan);
  CHECK(sa.digit_at(1) == 2);
  for (size_t k = 1; k <= 4; ++k) {
    auto [lo, hi] = sa.block_span(k);
    for (long p = lo; p <= hi; ++p) CHECK(sa.digit_at(p) == 2);
    // Block fidelity: the 2k digits equal (c_k..c_1, b_1..b_k).
    TargetDigits td = sa.target_digits();
    for (long off = 0; off < hi - lo + 1; ++off) {
      mpz_class expect = off < static_cast<long>(k)
                             ? td.c_digit(k - off)
                             : td.b_digit(off - static_cast<long>(k) + 1);
      CHECK(sa.digit_at(lo + off) == expect);
    }
    if (lo > 2) CHECK(sa.digit_at(lo - 1) == 1);  // filler on the left
    CHECK(sa.digit_at(hi + 1) == 1);              // filler on the right
  }
  // Digit cap: every digit <= max(L, M, 2).
  for (long p = 1; p <= 300; ++p) CHECK(sa.digit_at(p) <= 3);
}

TEST_CASE("synthesis rejects undersized digit caps") {
  SynthesisPlan plan;
  plan.L = 1;
  CHECK_THROWS_AS(synthesize(sqrt2_target(), plan), Error);
  plan.L = 2;
  plan.filler = 5;
  CHECK_THROWS_AS(synthesize(phi_target(), plan), Error);
}

TEST_CASE("verify_limit_point: distances decay within the 2^-k envelope") {
  SynthesisPlan plan;
  plan.L = 2;
  plan.blocks = 6;
  SynthesizedAlpha sa = synthesize(phi_target(), plan);
  auto cps = verify_limit_point(sa, phi_target(), 6, 60);
  REQUIRE(cps.size() == 6);
  double d1 = cps[0].distance;
  for (const auto& c : cps) {
    CHECK(c.tail_error == std::ldexp(1.0, -59));
    CHECK(c.n == 2 * static_cast<long>(c.k) * c.k * c.k);
    CHECK(c.distance <= 4.0 * std::ldexp(1.0, -static_cast<int>(c.k)) * (1 + d1));
  }
  CHECK(cps.back().distance < 1e-2);
  CHECK_THROWS_AS(verify_limit_point(sa, phi_target(), 7, 60), Error);
}

TEST_CASE("verify_limit_point: wrong target plateaus high") {
  SynthesisPlan plan;
  plan.L = 2;
  plan.blocks = 5;
  SynthesizedAlpha sa = synthesize(phi_target(), plan);
  // Same field, wrong point: y' = 1 - phi = phi^2.
  SectionPoint wrong = section_point_parse("phi,sqrt5:3:-1:2,+1");
  auto cps = verify_limit_point(sa, wrong, 5, 60);
  for (const auto& c : cps) CHECK(c.distance > 1e-1);
}

TEST_CASE("independent lattice-chain recomputation matches the digit formulas") {
  SynthesisPlan plan;
  plan.L = 2;
  plan.blocks = 3;
  SynthesizedAlpha sa = synthesize(phi_target(), plan);
  const size_t D = 40;
  long mK = sa.positions().back();
  size_t N = static_cast<size_t>(mK) + sa.positions().size() + D;
  mpq_class alpha = sa.convergent_surrogate(N);
  SectionChain chain = section_chain(lattice_from_alpha(NumberValue(alpha)),
                                     static_cast<size_t>(mK));
  REQUIRE(chain.steps.size() == static_cast<size_t>(mK) + 1);
  // x_j = [0; d_{j+1}, ..., d_N] and y_j = [0; d_j, ..., d_1], exactly.
  std::vector<mpq_class> tails(N + 1);
  tails[N] = 0;
  for (size_t j = N; j-- > 0;)
    tails[j] = mpq_class(1) / (mpq_class(sa.digit_at(j + 1)) + tails[j + 1]);
  mpz_class q_prev = 0, q_cur = 1;
  for (long j = 0; j <= mK; ++j) {
    const SectionPoint& sp = chain.steps[j].sp;
    mpq_class ey(q_prev, q_cur);
    ey.canonicalize();
    CHECK(sp.x == NumberValue(tails[j]));
    CHECK(sp.y == NumberValue(ey));
    CHECK(sp.eps == ((j % 2 == 0) ? -1 : 1));
    mpz_class q_next = sa.digit_at(j + 1) * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
  }
}

TEST_CASE("synthesis report JSON") {
  SynthesisPlan plan;
  plan.L = 2;
  plan.blocks = 2;
  SynthesizedAlpha sa = synthesize(phi_target(), plan);
  auto j = sa.to_json(10);
  CHECK(j["alpha_digits_prefix"].size() == 10);
  CHECK(j["alpha_digits_prefix"][0] == "2");
  CHECK(j["digit_bound_M"] == "1");
  auto cps = verify_limit_point(sa, phi_target(), 2, 30);
  auto rep = verify_report(sa, cps);
  CHECK(rep["checkpoints"].size() == 2);
}
