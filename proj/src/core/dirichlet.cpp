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

#include "core/dirichlet.hpp"

#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/shortest_vector.hpp"

namespace latorb {

nlohmann::ordered_json DiConfig::to_json() const {
  nlohmann::ordered_json j;
  j["t0"] = t0;
  j["t_max"] = t_max;
  j["step"] = step;
  j["delta_factor"] = delta_factor;
  j["hits_required"] = hits_required;
  j["windows_required"] = windows_required;
  j["window_gap"] = window_gap;
  j["tail_depth"] = tail_depth;
  j["precision"] = default_precision();
  return j;
}

nlohmann::ordered_json DiVerdict::to_json(
    const nlohmann::ordered_json& config) const {
  nlohmann::ordered_json j;
  j["schema"] = "lattice-orbits/1";
  j["config"] = config;
  j["verdict"] = verdict;
  j["sup_tail"] = sup_tail;
  j["margin"] = margin;
  j["c_estimate"] = c_estimate;
  j["r_hat"] = r_hat;
  j["delta"] = delta;
  j["near_hits"] = near_hits;
  j["windows"] = windows;
  j["samples"] = sample_count;
  return j;
}

namespace {

struct ScanSample {
  double t;
  double lambda1;
};

class SegmentSampler {
 public:
  SegmentSampler(const NormBody& nu, const DiConfig& cfg)
      : nu_(nu), cfg_(cfg), prec_(default_precision()) {}

  // Samples one section segment [t_n, t_end) of the orbit whose normalized
  // lattice there is M(x, y) Z^2; includes the section time itself.
  void segment(double t_n, double t_end, const NumberValue& x,
               const NumberValue& y) {
    BigFloat one = BigFloat::from_long(1, prec_);
    BigFloat bx = x.to_bigfloat(prec_);
    BigFloat by = y.to_bigfloat(prec_);
    BigFloat den = one + bx * by;
    // Columns (1, y/(1+xy)) and (-x, 1/(1+xy)); the eps sign would only
    // flip a column, which leaves the lattice unchanged.
    BigFloat m00 = one, m01 = -bx;
    BigFloat m10 = by / den, m11 = one / den;
    auto sample_at = [&](double t_abs) {
      BigFloat s = BigFloat::from_double(t_abs - t_n, prec_);
      BigFloat es = s.exp(), ems = (-s).exp();
      NumericBasis b{es * m00, es * m01, ems * m10, ems * m11};
      double lam = shortest_vector_numeric(b, nu_).value.to_double();
      samples_.push_back({t_abs, lam});
    };
    if (t_n >= cfg_.t0 && t_n <= cfg_.t_max) sample_at(t_n);
    double start = std::max(t_n, cfg_.t0);
    long k0 = static_cast<long>(std::ceil((start - cfg_.t0) / cfg_.step));
    for (long k = k0;; ++k) {
      double t_abs = cfg_.t0 + k * cfg_.step;
      if (t_abs >= t_end || t_abs > cfg_.t_max) break;
      if (t_abs <= t_n) continue;  // section sample already taken
      sample_at(t_abs);
    }
  }

  const std::vector<ScanSample>& samples() const { return samples_; }

 private:
  const NormBody& nu_;
  const DiConfig& cfg_;
  unsigned prec_;
  std::vector<ScanSample> samples_;
};

DiVerdict judge(const std::vector<ScanSample>& samples, const NormBody& nu,
                const DiConfig& cfg) {
  if (!nu.has_critical())
    fail(ErrorCode::domain, "critical radius not yet computed for this norm");
  const CriticalData& cd = nu.critical();
  double r_hat = cd.r_hat.to_double();
  double delta = cfg.delta_factor * cd.error_bound;

  DiVerdict v;
  v.r_hat = r_hat;
  v.delta = delta;
  v.sample_count = samples.size();
  if (samples.empty())
    fail(ErrorCode::invalid_argument, "scan window contains no samples");
  double sup = samples[0].lambda1;
  for (const auto& s : samples) sup = std::max(sup, s.lambda1);
  v.sup_tail = sup;
  v.margin = r_hat - sup;
  v.c_estimate = sup / r_hat;

  int hits = 0, windows = 0;
  double last_hit_t = -1e300;
  for (const auto& s : samples) {
    if (s.lambda1 >= r_hat - delta) {
      ++hits;
      if (s.t - last_hit_t > cfg.window_gap) ++windows;
      last_hit_t = s.t;
    }
  }
  v.near_hits = hits;
  v.windows = windows;

  if (sup <= r_hat - delta)
    v.verdict = "improvable (heuristic)";
  else if (hits >= cfg.hits_required && windows >= cfg.windows_required)
    v.verdict = "non-improvable (heuristic)";
  else
    v.verdict = "inconclusive";
  return v;
}

}  // namespace

DiVerdict di_test(const NumberValue& alpha, const NormBody& nu,
                  const DiConfig& cfg) {
  if (!alpha.is_exact())
    fail(ErrorCode::domain, "di_test needs an exact alpha");
  if (!(cfg.t0 < cfg.t_max))
    fail(ErrorCode::invalid_argument, "need t0 < t_max");
  SegmentSampler sampler(nu, cfg);
  SectionChainWalker walker(lattice_from_alpha(alpha));
  while (true) {
    double t_n = walker.time().to_double();
    if (t_n > cfg.t_max) break;
    if (walker.terminal()) {
      // Axis segment: the lattice keeps the form M(0, y) from here on.
      sampler.segment(t_n, cfg.t_max + cfg.step, walker.point().x,
                      walker.point().y);
      break;
    }
    SectionPoint sp = walker.point();
    walker.step();
    double t_next = walker.time().to_double();
    sampler.segment(t_n, t_next, sp.x, sp.y);
  }
  return judge(sampler.samples(), nu, cfg);
}

DiVerdict di_test(const CFExpansion& alpha_digits, const NormBody& nu,
                  const DiConfig& cfg) {
  if (!(cfg.t0 < cfg.t_max))
    fail(ErrorCode::invalid_argument, "need t0 < t_max");
  auto d1 = alpha_digits.digit(0);
  if (!d1 || *d1 != 2)
    fail(ErrorCode::domain,
         "digit-stream scan needs first digit 2 to anchor the initial pair");

  SegmentSampler sampler(nu, cfg);
  // Continuants of (d_1..d_n): y_n = q_{n-1}/q_n is the reversed expansion
  // [0; d_n, ..., d_1].
  mpz_class q_prev = 0, q_cur = 1;
  double t_n = 0;
  size_t n = 0;
  auto tail_value = [&](size_t from) -> NumberValue {
    // [0; d_{from+1}, ..., d_{from+D}] exactly; shorter if the stream ends.
    mpz_class p1 = 1, q1 = 0, p = 0, q = 1;
    for (size_t i = 0; i < cfg.tail_depth; ++i) {
      auto d = alpha_digits.digit(from + i);
      if (!d) break;
      mpz_class pn = *d * p + p1, qn = *d * q + q1;
      p1 = p;
      q1 = q;
      p = pn;
      q = qn;
    }
    if (q == 1 && p == 0) return NumberValue(mpq_class(0));
    return NumberValue::rational(p, q);
  };

  while (t_n <= cfg.t_max) {
    NumberValue x = tail_value(n);
    NumberValue y = NumberValue::rational(q_prev, q_cur);
    if (x.is_zero()) {
      sampler.segment(t_n, cfg.t_max + cfg.step, x, y);
      break;
    }
    double dt = -std::log(x.to_bigfloat(64).to_double());
    sampler.segment(t_n, t_n + dt, x, y);
    auto d = alpha_digits.digit(n);
    if (!d) fail(ErrorCode::internal, "digit stream ended unexpectedly");
    mpz_class q_next = *d * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    t_n += dt;
    ++n;
  }
  return judge(sampler.samples(), nu, cfg);
}

}  // namespace latorb
