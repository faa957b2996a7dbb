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

#include "core/dimension.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace latorb {

mpq_class conditional_tail(std::span<const mpz_class> index, const mpq_class& x) {
  if (x < 0 || x > 1)
    fail(ErrorCode::invalid_argument, "threshold must lie in [0, 1]");
  CylinderInterval c = cylinder(index);
  mpq_class num = 1 - x;
  mpq_class den = c.sigma * x + 1;
  mpq_class r = num / den;
  r.canonicalize();
  return r;
}

mpq_class conditional_band(std::span<const mpz_class> index, const mpq_class& x,
                           const mpq_class& y) {
  if (!(x > 0 && x < y && y < 1))
    fail(ErrorCode::invalid_argument, "need 0 < x < y < 1");
  CylinderInterval c = cylinder(index);
  mpq_class r = (y - x) * (c.sigma + 1) / ((c.sigma * x + 1) * (c.sigma * y + 1));
  r.canonicalize();
  return r;
}

ThetaBound theta_bound(long m, long L, const mpz_class& M,
                       const std::vector<long>& positions) {
  if (mpz_class(L) <= M)
    fail(ErrorCode::invalid_argument, "need L > M for the theta bounds");
  if (m < 1) fail(ErrorCode::invalid_argument, "theta levels start at m = 1");
  long p = m + 1;  // digit position fixed by the refinement E_m -> E_{m+1}
  bool forced = false;
  for (size_t k = 1; k <= positions.size(); ++k) {
    long mk = positions[k - 1];
    if (p >= mk - static_cast<long>(k) + 1 && p <= mk + static_cast<long>(k)) {
      forced = true;
      break;
    }
  }
  ThetaBound tb;
  tb.forced = forced;
  if (forced) {
    mpz_class d = 4 * (M + 1) * (M + 1);
    tb.value = mpq_class(1, d);
  } else {
    tb.value = mpq_class(L, L + 2);
  }
  tb.value.canonicalize();
  return tb;
}

nlohmann::ordered_json DimBoundReport::to_json(
    const nlohmann::ordered_json& config) const {
  nlohmann::ordered_json j;
  j["schema"] = "lattice-orbits/1";
  j["config"] = config;
  j["asymptotic_bound"] = asymptotic;
  j["curve_at_max"] = curve_at_max;
  j["running_max_deficit_tail"] = running_max_tail;
  nlohmann::ordered_json rowsj = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    rowsj.push_back({{"m", r.m},
                     {"free", r.free_count},
                     {"forced", r.forced_count},
                     {"theta_lo", r.theta_lo.get_str()},
                     {"curve", r.curve},
                     {"block_density", r.block_density}});
  }
  j["curve"] = rowsj;
  return j;
}

std::string DimBoundReport::to_csv(const nlohmann::ordered_json& config) const {
  std::ostringstream os;
  os << "# schema: lattice-orbits/1\n";
  os << "# config: " << config.dump() << "\n";
  os << "# asymptotic_bound: " << asymptotic << "\n";
  os << "m,free,forced,theta_lo,curve,block_density\n";
  for (const auto& r : rows) {
    os << r.m << "," << r.free_count << "," << r.forced_count << ","
       << r.theta_lo.get_str() << "," << r.curve << "," << r.block_density
       << "\n";
  }
  return os.str();
}

DimBoundReport dim_lower_bound(long L, const mpz_class& M,
                               const std::vector<long>& positions, long m_max) {
  if (m_max < 2) fail(ErrorCode::invalid_argument, "m_max must be >= 2");
  if (!positions.empty()) {
    long needed = positions.back() + static_cast<long>(positions.size());
    if (m_max < needed)
      fail(ErrorCode::invalid_argument,
           "m_max is below the largest block position " + std::to_string(needed));
  }
  DimBoundReport rep;
  const double log2 = std::log(2.0);
  rep.asymptotic =
      1.0 - std::log((static_cast<double>(L) + 2.0) / L) / log2;

  double deficit_sum = 0;  // sum of -log theta_j^lo, j = 1..m-1
  long free_count = 0, forced_count = 0;
  std::vector<double> deficit_ratio(m_max + 1, 0.0);
  for (long m = 2; m <= m_max; ++m) {
    long j = m - 1;
    ThetaBound tb = theta_bound(j, L, M, positions);
    deficit_sum += -std::log(tb.value.get_d());
    (tb.forced ? forced_count : free_count) += 1;
    double ratio = deficit_sum / (m * log2);
    deficit_ratio[m] = ratio;
    DimBoundReport::Row row;
    row.m = m;
    row.free_count = free_count;
    row.forced_count = forced_count;
    row.theta_lo = tb.value;
    row.curve = 1.0 - ratio;
    row.block_density = position_density(positions, m);
    rep.rows.push_back(row);
  }
  rep.curve_at_max = rep.rows.back().curve;
  // Finite-m surrogate for the limsup: worst deficit over [m/2, m].
  double worst = 0;
  for (long m = m_max / 2; m <= m_max; ++m)
    worst = std::max(worst, deficit_ratio[m]);
  rep.running_max_tail = worst;
  return rep;
}

namespace {

mpq_class closed_length(const CylinderInterval& c) { return c.hi - c.lo; }

}  // namespace

CantorAudit audit_family(long L, const TargetDigits* target,
                         const std::vector<long>& positions, long m_max) {
  if (L < 2) fail(ErrorCode::invalid_argument, "need L >= 2");
  if (target && mpz_class(L) <= target->bound)
    fail(ErrorCode::invalid_argument, "need L > M");
  if (!positions.empty() && !target)
    fail(ErrorCode::invalid_argument, "blocked audit needs target digits");
  const long cap = 1000000;

  CantorAudit audit;
  audit.densities_pass = true;
  audit.diam_pass = true;

  // E_0 = {[0, 1]}: represented separately (not a cylinder).
  CantorLevel level0;
  level0.m = 0;
  level0.diam = 1;
  audit.levels.push_back(level0);
  audit.total_intervals = 1;

  // E_1: first digit forced to 2.
  CantorLevel level1;
  level1.m = 1;
  std::vector<mpz_class> first = {mpz_class(2)};
  level1.intervals.push_back(cylinder(first));
  level1.theta_hat_min = closed_length(level1.intervals[0]);  // over [0,1]
  level1.diam = closed_length(level1.intervals[0]);
  level1.forced = true;
  audit.diam_pass = audit.diam_pass && level1.diam <= mpq_class(1, 2);
  audit.levels.push_back(std::move(level1));
  audit.total_intervals += 1;

  mpz_class M = target ? target->bound : mpz_class(1);
  for (long m = 1; m < m_max; ++m) {
    const CantorLevel& parent = audit.levels.back();
    CantorLevel next;
    next.m = m + 1;
    long p = m + 1;  // digit position being fixed
    std::optional<mpz_class> forced_digit;
    if (target) forced_digit = block_digit_at(positions, *target, p);
    next.forced = forced_digit.has_value();

    long branch = forced_digit ? 1 : L;
    long incoming = static_cast<long>(parent.intervals.size()) * branch;
    if (audit.total_intervals + incoming > cap)
      fail(ErrorCode::resource,
           "interval cap exceeded at level " + std::to_string(m + 1));

    mpq_class theta_min;
    bool theta_set = false;
    mpq_class diam = 0;
    for (const CylinderInterval& node : parent.intervals) {
      mpq_class node_len = closed_length(node);
      mpq_class child_sum = 0;
      std::vector<mpz_class> child_index = node.index;
      child_index.push_back(0);
      auto add_child = [&](const mpz_class& digit) {
        child_index.back() = digit;
        CylinderInterval child = cylinder(child_index);
        // Structural refinement: child closure inside parent closure.
        if (child.lo < node.lo || child.hi > node.hi)
          fail(ErrorCode::internal, "child cylinder escapes its parent");
        child_sum += closed_length(child);
        if (closed_length(child) > diam) diam = closed_length(child);
        next.intervals.push_back(std::move(child));
      };
      if (forced_digit) {
        add_child(*forced_digit);
      } else {
        for (long d = 1; d <= L; ++d) add_child(mpz_class(d));
      }
      mpq_class density = child_sum / node_len;
      density.canonicalize();
      if (!theta_set || density < theta_min) {
        theta_min = density;
        theta_set = true;
      }
    }
    next.theta_hat_min = theta_min;
    next.diam = diam;
    audit.total_intervals += static_cast<long>(next.intervals.size());

    // theta_hat >= theta_lo for the refinement E_m -> E_{m+1} (m >= 1).
    ThetaBound tb = theta_bound(m, L, M, positions);
    if (theta_min < tb.value) audit.densities_pass = false;

    // diam_{m+1} <= 2^-(m+1), exactly.
    mpq_class diam_cap(1);
    diam_cap /= mpq_class(mpz_class(1) << static_cast<unsigned>(m + 1));
    if (diam > diam_cap) audit.diam_pass = false;

    audit.levels.push_back(std::move(next));
  }
  return audit;
}

nlohmann::ordered_json CantorAudit::to_json(
    const nlohmann::ordered_json& config) const {
  nlohmann::ordered_json j;
  j["schema"] = "lattice-orbits/1";
  j["config"] = config;
  j["densities_pass"] = densities_pass;
  j["diam_pass"] = diam_pass;
  j["total_intervals"] = total_intervals;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& lvl : levels) {
    nlohmann::ordered_json row;
    row["m"] = lvl.m;
    row["count"] = lvl.intervals.size() == 0 && lvl.m == 0
                       ? 1
                       : static_cast<long>(lvl.intervals.size());
    row["theta_hat_min"] =
        lvl.theta_hat_min ? lvl.theta_hat_min->get_str() : "";
    row["diam"] = lvl.diam.get_str();
    row["forced"] = lvl.forced;
    arr.push_back(std::move(row));
  }
  j["levels"] = arr;
  return j;
}

}  // namespace latorb
