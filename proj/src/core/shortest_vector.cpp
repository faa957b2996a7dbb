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

#include "core/shortest_vector.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace latorb {

namespace {

struct ReducedBasis {
  BigFloat ux, uy, vx, vy;
  // Integer coordinates of u and v in the original basis.
  mpz_class cu_i, cu_j, cv_i, cv_j;
};

ReducedBasis lagrange_reduce(const NumericBasis& b) {
  ReducedBasis r{b.b00, b.b10, b.b01, b.b11, 1, 0, 0, 1};
  BigFloat half = BigFloat::from_double(0.5, r.ux.prec());
  for (int iter = 0; iter < 256; ++iter) {
    BigFloat nu = r.ux * r.ux + r.uy * r.uy;
    BigFloat nv = r.vx * r.vx + r.vy * r.vy;
    if (nu.cmp(nv) > 0) {
      std::swap(r.ux, r.vx);
      std::swap(r.uy, r.vy);
      std::swap(r.cu_i, r.cv_i);
      std::swap(r.cu_j, r.cv_j);
      std::swap(nu, nv);
    }
    if (nu.is_zero() || !nu.is_finite())
      fail(ErrorCode::domain, "degenerate basis in reduction");
    BigFloat q = (r.ux * r.vx + r.uy * r.vy) / nu;
    // |q| <= 1/2 is the reduced condition; rounding ties at exactly 1/2
    // would otherwise cycle on lattices with equal-length shortest pairs.
    if (q.abs().cmp(half) <= 0) return r;
    mpz_class mu = q.round_to_mpz();
    BigFloat muf = BigFloat::from_mpz(mu, r.ux.prec());
    BigFloat wx = r.vx - muf * r.ux;
    BigFloat wy = r.vy - muf * r.uy;
    BigFloat nw = wx * wx + wy * wy;
    if (nw.cmp(nv) >= 0) return r;  // no progress: numerically reduced
    r.vx = wx;
    r.vy = wy;
    r.cv_i -= mu * r.cu_i;
    r.cv_j -= mu * r.cu_j;
  }
  fail(ErrorCode::no_convergence, "reduction did not terminate");
}

}  // namespace

ShortestResult shortest_vector_numeric(const NumericBasis& basis,
                                       const NormBody& nu) {
  ReducedBasis rb = lagrange_reduce(basis);

  double g11 = (rb.ux * rb.ux + rb.uy * rb.uy).to_double();
  double g22 = (rb.vx * rb.vx + rb.vy * rb.vy).to_double();
  double g12 = (rb.ux * rb.vx + rb.uy * rb.vy).to_double();
  if (!std::isfinite(g11) || !std::isfinite(g22) || g11 <= 0)
    fail(ErrorCode::precision, "basis magnitudes out of range");
  double mu = g12 / g11;
  double b2star2 = g22 - mu * mu * g11;
  if (!(b2star2 > 0)) fail(ErrorCode::domain, "degenerate basis");

  BigFloat nu_u = nu.evaluate(rb.ux, rb.uy);
  BigFloat nu_v = nu.evaluate(rb.vx, rb.vy);
  double ub = std::min(nu_u.to_double(), nu_v.to_double());
  double r2 = ub / nu.c_lo() * (1.0 + 1e-9) + 1e-300;
  long jmax = static_cast<long>(std::floor(r2 / std::sqrt(b2star2) + 1e-9));
  double iw = r2 / std::sqrt(g11) + 1e-9;

  ShortestResult best;
  bool have = false;
  // By symmetry nu(-w) = nu(w); scan j >= 0 and i > 0 when j == 0.
  for (long j = 0; j <= jmax; ++j) {
    double center = -mu * static_cast<double>(j);
    long ilo = static_cast<long>(std::ceil(center - iw));
    long ihi = static_cast<long>(std::floor(center + iw));
    for (long i = ilo; i <= ihi; ++i) {
      if (j == 0 && i <= 0) continue;
      BigFloat fi = BigFloat::from_long(i, rb.ux.prec());
      BigFloat fj = BigFloat::from_long(j, rb.ux.prec());
      BigFloat wx = fi * rb.ux + fj * rb.vx;
      BigFloat wy = fi * rb.uy + fj * rb.vy;
      BigFloat val = nu.evaluate(wx, wy);
      if (!have || val.cmp(best.value) < 0) {
        best.value = val;
        best.wi = i * rb.cu_i + j * rb.cv_i;
        best.wj = i * rb.cu_j + j * rb.cv_j;
        have = true;
      }
    }
  }
  if (!have) fail(ErrorCode::internal, "empty shortest-vector search box");
  return best;
}

ShortestResult shortest_vector(const PlanarLattice& lat, const NormBody& nu) {
  return shortest_vector_numeric(numeric_basis(lat), nu);
}

std::string OrbitScanResult::to_csv(const nlohmann::ordered_json& config) const {
  std::ostringstream os;
  os << "# schema: lattice-orbits/1\n";
  os << "# config: " << config.dump() << "\n";
  os << "t,lambda1,i,j\n";
  for (const auto& s : samples) {
    os << s.t.to_string() << "," << s.lambda1.to_string() << ","
       << s.wi.get_str() << "," << s.wj.get_str() << "\n";
  }
  return os.str();
}

nlohmann::ordered_json OrbitScanResult::to_json(
    const nlohmann::ordered_json& config) const {
  nlohmann::ordered_json j;
  j["schema"] = "lattice-orbits/1";
  j["config"] = config;
  j["grid_inf"] = {{"t", inf().t.to_string()},
                   {"lambda1", inf().lambda1.to_string()},
                   {"i", inf().wi.get_str()},
                   {"j", inf().wj.get_str()}};
  j["grid_sup"] = {{"t", sup().t.to_string()},
                   {"lambda1", sup().lambda1.to_string()},
                   {"i", sup().wi.get_str()},
                   {"j", sup().wj.get_str()}};
  j["refined_inf"] = refined_inf.to_string();
  j["refined_inf_t"] = refined_inf_t.to_string();
  j["divergence_suspected"] = divergence_suspected;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : samples) {
    arr.push_back({{"t", s.t.to_string()},
                   {"lambda1", s.lambda1.to_string()},
                   {"i", s.wi.get_str()},
                   {"j", s.wj.get_str()}});
  }
  j["samples"] = std::move(arr);
  return j;
}

namespace {

BigFloat lambda1_at(const PlanarLattice& lat, const NormBody& nu,
                    const BigFloat& t, ShortestResult* out = nullptr) {
  PlanarLattice moved = act(GroupElement::diagonal_flow(t), lat);
  ShortestResult r = shortest_vector(moved, nu);
  if (out) *out = r;
  return r.value;
}

}  // namespace

OrbitScanResult orbit_min_scan(const PlanarLattice& lat, const NormBody& nu,
                               const BigFloat& t_lo, const BigFloat& t_hi,
                               const BigFloat& step) {
  if (!(t_lo.cmp(t_hi) <= 0))
    fail(ErrorCode::invalid_argument, "need t_lo <= t_hi");
  if (t_lo.cmp(t_hi) < 0 && step.sign() <= 0)
    fail(ErrorCode::invalid_argument, "step must be positive");

  OrbitScanResult res;
  BigFloat t = t_lo;
  bool last = false;
  while (true) {
    ShortestResult sr;
    BigFloat lam = lambda1_at(lat, nu, t, &sr);
    res.samples.push_back({t, lam, sr.wi, sr.wj});
    size_t k = res.samples.size() - 1;
    if (lam.cmp(res.samples[res.inf_index].lambda1) < 0) res.inf_index = k;
    if (lam.cmp(res.samples[res.sup_index].lambda1) > 0) res.sup_index = k;
    if (last || t_lo.cmp(t_hi) == 0) break;
    t = t + step;
    if (t.cmp(t_hi) >= 0) {
      t = t_hi;
      last = true;
    }
  }

  // Golden-section descent in the bracket around the grid minimizer.
  const OrbitSample& m = res.inf();
  BigFloat a = m.t - step, b = m.t + step;
  if (a.cmp(t_lo) < 0) a = t_lo;
  if (b.cmp(t_hi) > 0) b = t_hi;
  res.refined_inf = m.lambda1;
  res.refined_inf_t = m.t;
  if (a.cmp(b) < 0) {
    const double invphi = 0.6180339887498949;
    BigFloat ratio = BigFloat::from_double(invphi, a.prec());
    BigFloat x1 = b - ratio * (b - a);
    BigFloat x2 = a + ratio * (b - a);
    BigFloat f1 = lambda1_at(lat, nu, x1);
    BigFloat f2 = lambda1_at(lat, nu, x2);
    for (int round = 0; round < 3; ++round) {
      for (int it = 0; it < 8; ++it) {
        if (f1.cmp(f2) < 0) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - ratio * (b - a);
          f1 = lambda1_at(lat, nu, x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + ratio * (b - a);
          f2 = lambda1_at(lat, nu, x2);
        }
      }
    }
    const BigFloat& fbest = f1.cmp(f2) < 0 ? f1 : f2;
    const BigFloat& tbest = f1.cmp(f2) < 0 ? x1 : x2;
    if (fbest.cmp(res.refined_inf) < 0) {
      res.refined_inf = fbest;
      res.refined_inf_t = tbest;
    }
  }

  res.divergence_suspected = res.refined_inf.to_double() < 1e-3;
  return res;
}

}  // namespace latorb
