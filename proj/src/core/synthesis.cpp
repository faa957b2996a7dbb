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

#include "core/synthesis.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace latorb {

TargetDigits TargetDigits::from_target(const SectionPoint& target) {
  if (target.x.kind() != NumberValue::Kind::surd ||
      target.y.kind() != NumberValue::Kind::surd)
    fail(ErrorCode::domain,
         "target coordinates must be quadratic surds (certified precompact)");
  TargetDigits td;
  td.b = detect_period(target.x.as_surd());
  td.c = detect_period(target.y.as_surd());
  td.bound = 0;
  for (const auto& d : td.b.preperiod) td.bound = std::max(td.bound, d);
  for (const auto& d : td.b.period) td.bound = std::max(td.bound, d);
  for (const auto& d : td.c.preperiod) td.bound = std::max(td.bound, d);
  for (const auto& d : td.c.period) td.bound = std::max(td.bound, d);
  return td;
}

std::vector<long> sparse_positions(size_t count) {
  if (count < 1) fail(ErrorCode::invalid_argument, "need at least one position");
  std::vector<long> m(count);
  for (size_t k = 1; k <= count; ++k)
    m[k - 1] = 2 * static_cast<long>(k) * k * k;
  validate_positions(m);
  return m;
}

void validate_positions(const std::vector<long>& positions) {
  if (positions.empty()) fail(ErrorCode::invalid_argument, "empty positions");
  for (size_t k = 1; k <= positions.size(); ++k) {
    long mk = positions[k - 1];
    if (mk % 2 != 0)
      fail(ErrorCode::invalid_argument, "position m_k must be even");
    if (mk - static_cast<long>(k) + 1 < 2)
      fail(ErrorCode::invalid_argument, "block would collide with digit 1");
    if (k > 1) {
      long gap = mk - positions[k - 2];
      if (gap <= 2 * static_cast<long>(k))
        fail(ErrorCode::invalid_argument,
             "gap condition violated: m_k - m_{k-1} must exceed 2k");
    }
  }
  // Density peaks must decrease: occupied fraction measured at each m_k.
  double prev = 2.0;
  for (size_t k = 2; k <= positions.size(); ++k) {
    double d = position_density(positions, positions[k - 1]);
    if (d > prev + 1e-12)
      fail(ErrorCode::invalid_argument, "position density is not decreasing");
    prev = d;
  }
}

double position_density(const std::vector<long>& positions, long n) {
  long occupied = 0;
  for (size_t k = 1; k <= positions.size(); ++k) {
    if (positions[k - 1] < n) occupied += 2 * static_cast<long>(k);
  }
  return static_cast<double>(occupied) / static_cast<double>(n);
}

std::optional<mpz_class> block_digit_at(const std::vector<long>& positions,
                                        const TargetDigits& digits, long p) {
  for (size_t k = 1; k <= positions.size(); ++k) {
    long mk = positions[k - 1];
    long lo = mk - static_cast<long>(k) + 1;
    long hi = mk + static_cast<long>(k);
    if (p < lo || p > hi) continue;
    long offset = p - lo;  // 0 .. 2k-1
    if (offset < static_cast<long>(k)) return digits.c_digit(k - offset);
    return digits.b_digit(offset - static_cast<long>(k) + 1);
  }
  return std::nullopt;
}

nlohmann::ordered_json SynthesisPlan::to_json() const {
  nlohmann::ordered_json j;
  j["L"] = L;
  j["blocks"] = blocks;
  j["filler"] = filler;
  nlohmann::ordered_json pos = nlohmann::ordered_json::array();
  for (long p : positions) pos.push_back(p);
  j["positions"] = pos;
  return j;
}

SynthesizedAlpha::SynthesizedAlpha(TargetDigits target, SynthesisPlan plan)
    : target_(std::move(target)), plan_(std::move(plan)) {
  if (plan_.filler < 1 || plan_.filler > plan_.L)
    fail(ErrorCode::invalid_argument, "filler digit must lie in [1, L]");
  mpz_class minL = target_.bound > 2 ? target_.bound : mpz_class(2);
  if (mpz_class(plan_.L) < minL)
    fail(ErrorCode::invalid_argument,
         "digit cap L must be at least max(M, 2), M = " + target_.bound.get_str());
  positions_ = plan_.positions.empty() ? sparse_positions(plan_.blocks)
                                       : plan_.positions;
  validate_positions(positions_);
  // Blocks cannot collide under the gap condition; assert anyway.
  for (size_t k = 2; k <= positions_.size(); ++k) {
    long prev_hi = positions_[k - 2] + static_cast<long>(k - 1);
    long lo = positions_[k - 1] - static_cast<long>(k) + 1;
    if (lo <= prev_hi) fail(ErrorCode::internal, "block collision");
  }
  const TargetDigits td = target_;
  const std::vector<long> pos = positions_;
  const long filler = plan_.filler;
  digits_ = CFExpansion::from_stream([td, pos, filler](size_t i) -> mpz_class {
    long p = static_cast<long>(i) + 1;
    if (p == 1) return 2;
    if (auto d = block_digit_at(pos, td, p)) return *d;
    return filler;
  });
}

mpz_class SynthesizedAlpha::digit_at(long p) const {
  if (p < 1) fail(ErrorCode::invalid_argument, "positions are 1-based");
  return *digits_.digit(static_cast<size_t>(p - 1));
}

std::pair<long, long> SynthesizedAlpha::block_span(size_t k) const {
  if (k < 1 || k > positions_.size())
    fail(ErrorCode::invalid_argument, "block index out of range");
  long mk = positions_[k - 1];
  return {mk - static_cast<long>(k) + 1, mk + static_cast<long>(k)};
}

mpq_class SynthesizedAlpha::convergent_surrogate(size_t N) const {
  auto ds = digits_.prefix(N);
  auto conv = convergents(ds);
  if (conv.empty()) fail(ErrorCode::invalid_argument, "empty surrogate");
  return conv.back().value();
}

nlohmann::ordered_json SynthesizedAlpha::to_json(size_t prefix_len) const {
  nlohmann::ordered_json j;
  j["d1"] = 2;
  nlohmann::ordered_json prefix = nlohmann::ordered_json::array();
  for (const auto& d : digits_.prefix(prefix_len)) prefix.push_back(d.get_str());
  j["alpha_digits_prefix"] = prefix;
  nlohmann::ordered_json pos = nlohmann::ordered_json::array();
  for (size_t k = 1; k <= positions_.size(); ++k) {
    auto [lo, hi] = block_span(k);
    pos.push_back({{"k", k}, {"m_k", positions_[k - 1]}, {"lo", lo}, {"hi", hi}});
  }
  j["positions"] = pos;
  j["digit_bound_M"] = target_.bound.get_str();
  j["plan"] = plan_.to_json();
  return j;
}

SynthesizedAlpha synthesize(const SectionPoint& target, SynthesisPlan plan) {
  return SynthesizedAlpha(TargetDigits::from_target(target), std::move(plan));
}

std::vector<CheckpointDistance> verify_limit_point(const SynthesizedAlpha& sa,
                                                   const SectionPoint& target,
                                                   size_t checkpoints,
                                                   size_t tail_depth) {
  if (checkpoints > sa.positions().size())
    fail(ErrorCode::invalid_argument,
         "checkpoint beyond the generated position list");
  unsigned prec = default_precision();
  BigFloat one = BigFloat::from_long(1, prec);
  BigFloat tx = target.x.to_bigfloat(prec);
  BigFloat ty = target.y.to_bigfloat(prec);
  BigFloat tden = one + tx * ty;
  BigFloat t00 = one, t01 = -tx, t10 = ty / tden, t11 = one / tden;

  std::vector<CheckpointDistance> out;
  // Continuants q_j of (d_1 .. d_j) give y_j = q_{j-1}/q_j exactly.
  mpz_class q_prev = 0, q_cur = 1;
  long j = 0;
  for (size_t k = 1; k <= checkpoints; ++k) {
    long n = sa.positions()[k - 1];
    while (j < n) {
      mpz_class d = sa.digit_at(j + 1);
      mpz_class q_next = d * q_cur + q_prev;
      q_prev = q_cur;
      q_cur = q_next;
      ++j;
    }
    // x_n = [0; d_{n+1}, ..., d_{n+D}] exactly.
    mpz_class p1 = 1, qq1 = 0, p = 0, qq = 1;
    for (size_t i = 1; i <= tail_depth; ++i) {
      mpz_class d = sa.digit_at(n + static_cast<long>(i));
      mpz_class pn = d * p + p1, qn = d * qq + qq1;
      p1 = p;
      qq1 = qq;
      p = pn;
      qq = qn;
    }
    mpq_class xq(p, qq), yq(q_prev, q_cur);
    xq.canonicalize();
    yq.canonicalize();
    BigFloat bx = BigFloat::from_mpq(xq, prec), by = BigFloat::from_mpq(yq, prec);
    BigFloat den = one + bx * by;
    BigFloat c00 = one, c01 = -bx, c10 = by / den, c11 = one / den;
    double dist = 0;
    for (auto [a, b] : {std::pair{&c00, &t00}, std::pair{&c01, &t01},
                        std::pair{&c10, &t10}, std::pair{&c11, &t11}}) {
      dist = std::max(dist, (*a - *b).abs().to_double());
    }
    CheckpointDistance cd;
    cd.k = k;
    cd.n = n;
    cd.distance = dist;
    cd.tail_error = std::ldexp(1.0, 1 - static_cast<int>(tail_depth));
    out.push_back(cd);
  }
  return out;
}

nlohmann::ordered_json verify_report(const SynthesizedAlpha& sa,
                                     const std::vector<CheckpointDistance>& cps) {
  nlohmann::ordered_json j = sa.to_json();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : cps) {
    arr.push_back({{"k", c.k},
                   {"n", c.n},
                   {"distance", c.distance},
                   {"tail_error", c.tail_error}});
  }
  j["checkpoints"] = arr;
  return j;
}

}  // namespace latorb
