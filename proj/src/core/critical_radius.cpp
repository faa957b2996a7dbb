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

#include "core/critical_radius.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <future>
#include <vector>

#include "core/errors.hpp"

namespace latorb {

nlohmann::ordered_json OptimizerConfig::to_json() const {
  nlohmann::ordered_json j;
  j["grid"] = grid;
  j["nm_iterations"] = nm_iterations;
  j["nm_restarts"] = nm_restarts;
  j["polish_h"] = polish_h;
  j["locus_theta_grid"] = locus_theta_grid;
  j["threads"] = threads;
  j["precision"] = default_precision();
  return j;
}

OptimizerConfig OptimizerConfig::from_json(const nlohmann::ordered_json& j) {
  OptimizerConfig c;
  c.grid = j.value("grid", c.grid);
  c.nm_iterations = j.value("nm_iterations", c.nm_iterations);
  c.nm_restarts = j.value("nm_restarts", c.nm_restarts);
  c.polish_h = j.value("polish_h", c.polish_h);
  c.locus_theta_grid = j.value("locus_theta_grid", c.locus_theta_grid);
  c.threads = j.value("threads", c.threads);
  return c;
}

namespace {

struct Family {
  const NormBody* nu;
  unsigned prec;

  NumericBasis basis(double x, double t, double theta) const {
    BigFloat bx = BigFloat::from_double(x, prec);
    BigFloat bt = BigFloat::from_double(t, prec);
    BigFloat bth = BigFloat::from_double(theta, prec);
    BigFloat et = bt.exp();
    BigFloat emt = (-bt).exp();
    BigFloat c = bth.cos(), s = bth.sin();
    // R(theta) * [[e^t, x e^t], [0, e^-t]]
    BigFloat xet = bx * et;
    return NumericBasis{c * et, c * xet - s * emt, s * et, s * xet + c * emt};
  }

  double eval(double x, double t, double theta) const {
    return shortest_vector_numeric(basis(x, t, theta), *nu).value.to_double();
  }
  BigFloat eval_big(double x, double t, double theta) const {
    return shortest_vector_numeric(basis(x, t, theta), *nu).value;
  }
};

struct Point3 {
  double x = 0, t = 0, theta = 0;
};

// Nelder-Mead maximization, deterministic, unconstrained (the family is
// defined for all parameter values; the cover is redundant).
Point3 nelder_mead(const Family& fam, Point3 start, double scale, int iters,
                   double* best_out) {
  struct Vertex {
    Point3 p;
    double f;
  };
  auto eval = [&](const Point3& p) { return fam.eval(p.x, p.t, p.theta); };
  std::vector<Vertex> simplex;
  simplex.push_back({start, eval(start)});
  for (int k = 0; k < 3; ++k) {
    Point3 p = start;
    if (k == 0) p.x += scale;
    if (k == 1) p.t += scale;
    if (k == 2) p.theta += scale;
    simplex.push_back({p, eval(p)});
  }
  auto by_f = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };
  for (int it = 0; it < iters; ++it) {
    // Stable: on flat regions the incumbent stays first, so the simplex
    // shrinks toward the seed instead of drifting along a ridge of ties.
    std::stable_sort(simplex.begin(), simplex.end(), by_f);
    const Point3& b0 = simplex[0].p;
    Point3 centroid{(b0.x + simplex[1].p.x + simplex[2].p.x) / 3.0,
                    (b0.t + simplex[1].p.t + simplex[2].p.t) / 3.0,
                    (b0.theta + simplex[1].p.theta + simplex[2].p.theta) / 3.0};
    const Vertex& worst = simplex[3];
    auto lerp = [&](double coef) {
      return Point3{centroid.x + coef * (centroid.x - worst.p.x),
                    centroid.t + coef * (centroid.t - worst.p.t),
                    centroid.theta + coef * (centroid.theta - worst.p.theta)};
    };
    Point3 refl = lerp(1.0);
    double frefl = eval(refl);
    if (frefl > simplex[0].f) {
      Point3 expa = lerp(2.0);
      double fexpa = eval(expa);
      simplex[3] = fexpa > frefl ? Vertex{expa, fexpa} : Vertex{refl, frefl};
    } else if (frefl > simplex[2].f) {
      simplex[3] = {refl, frefl};
    } else {
      Point3 contr = lerp(-0.5);
      double fcontr = eval(contr);
      if (fcontr > worst.f) {
        simplex[3] = {contr, fcontr};
      } else {
        for (int k = 1; k < 4; ++k) {
          simplex[k].p.x = (simplex[k].p.x + b0.x) / 2;
          simplex[k].p.t = (simplex[k].p.t + b0.t) / 2;
          simplex[k].p.theta = (simplex[k].p.theta + b0.theta) / 2;
          simplex[k].f = eval(simplex[k].p);
        }
      }
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_f);
  *best_out = simplex[0].f;
  return simplex[0].p;
}

// Two-dimensional simplex over (x, t) at fixed theta.
Point3 nelder_mead_2d(const Family& fam, Point3 start, double scale, int iters,
                      double* best_out) {
  struct Vertex {
    Point3 p;
    double f;
  };
  auto eval = [&](const Point3& p) { return fam.eval(p.x, p.t, p.theta); };
  std::vector<Vertex> simplex;
  simplex.push_back({start, eval(start)});
  for (int k = 0; k < 2; ++k) {
    Point3 p = start;
    (k == 0 ? p.x : p.t) += scale;
    simplex.push_back({p, eval(p)});
  }
  auto by_f = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };
  for (int it = 0; it < iters; ++it) {
    std::stable_sort(simplex.begin(), simplex.end(), by_f);
    Point3 centroid{(simplex[0].p.x + simplex[1].p.x) / 2,
                    (simplex[0].p.t + simplex[1].p.t) / 2, start.theta};
    const Vertex& worst = simplex[2];
    auto lerp = [&](double coef) {
      return Point3{centroid.x + coef * (centroid.x - worst.p.x),
                    centroid.t + coef * (centroid.t - worst.p.t), start.theta};
    };
    Point3 refl = lerp(1.0);
    double frefl = eval(refl);
    if (frefl > simplex[0].f) {
      Point3 expa = lerp(2.0);
      double fexpa = eval(expa);
      simplex[2] = fexpa > frefl ? Vertex{expa, fexpa} : Vertex{refl, frefl};
    } else if (frefl > simplex[1].f) {
      simplex[2] = {refl, frefl};
    } else {
      Point3 contr = lerp(-0.5);
      double fcontr = eval(contr);
      if (fcontr > worst.f) {
        simplex[2] = {contr, fcontr};
      } else {
        for (int k = 1; k < 3; ++k) {
          simplex[k].p.x = (simplex[k].p.x + simplex[0].p.x) / 2;
          simplex[k].p.t = (simplex[k].p.t + simplex[0].p.t) / 2;
          simplex[k].f = eval(simplex[k].p);
        }
      }
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_f);
  *best_out = simplex[0].f;
  return simplex[0].p;
}

// Golden-section line search in theta only; returns the improved point.
Point3 theta_line_search(const Family& fam, Point3 p, double h, double* best_out) {
  const double invphi = 0.6180339887498949;
  double fbest = fam.eval(p.x, p.t, p.theta);
  double a = p.theta - h, b = p.theta + h;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = fam.eval(p.x, p.t, x1), f2 = fam.eval(p.x, p.t, x2);
  for (int it = 0; it < 32; ++it) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = fam.eval(p.x, p.t, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = fam.eval(p.x, p.t, x2);
    }
  }
  double xm = f1 > f2 ? x1 : x2;
  double fm = std::max(f1, f2);
  // Accept only above float noise, or exactly flat rotation families let
  // every slice random-walk onto the same numerical micro-peaks.
  if (fm > fbest + 1e-12 * std::max(1.0, std::fabs(fbest))) {
    p.theta = xm;
    fbest = fm;
  }
  *best_out = fbest;
  return p;
}

// Coordinate-wise golden-section polish; sharpens the kinked maxima that a
// simplex stalls on.
Point3 polish(const Family& fam, Point3 p, double h0, double* best_out) {
  const double invphi = 0.6180339887498949;
  double fbest = fam.eval(p.x, p.t, p.theta);
  for (int pass = 0; pass < 2; ++pass) {
    double h = h0 * (pass == 0 ? 10.0 : 1.0);
    for (int axis = 0; axis < 3; ++axis) {
      auto at = [&](double v) {
        Point3 q = p;
        (axis == 0 ? q.x : axis == 1 ? q.t : q.theta) = v;
        return q;
      };
      double center = axis == 0 ? p.x : axis == 1 ? p.t : p.theta;
      double a = center - h, b = center + h;
      double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
      Point3 p1 = at(x1), p2 = at(x2);
      double f1 = fam.eval(p1.x, p1.t, p1.theta);
      double f2 = fam.eval(p2.x, p2.t, p2.theta);
      for (int it = 0; it < 40; ++it) {
        if (f1 > f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - invphi * (b - a);
          Point3 q = at(x1);
          f1 = fam.eval(q.x, q.t, q.theta);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + invphi * (b - a);
          Point3 q = at(x2);
          f2 = fam.eval(q.x, q.t, q.theta);
        }
      }
      double xm = f1 > f2 ? x1 : x2;
      double fm = std::max(f1, f2);
      if (fm > fbest) {
        fbest = fm;
        p = at(xm);
      }
    }
  }
  *best_out = fbest;
  return p;
}

struct GridResult {
  std::vector<double> values;  // grid x-major within slice, slices stacked
  Point3 best;
  double best_f = 0;
};

}  // namespace

CriticalData critical_radius(const NormBody& nu, const OptimizerConfig& cfg) {
  if (nu.has_critical()) return nu.critical();
  const unsigned prec = default_precision();
  Family fam{&nu, prec};

  const double c_lo = nu.c_lo(), c_hi = nu.c_hi();
  const double t_cap = std::log(4.0 * c_hi / c_lo);
  const int G = cfg.grid;
  if (G < 4) fail(ErrorCode::invalid_argument, "grid too small");
  const double pi = 3.14159265358979323846;
  const double hx = 1.0 / (G - 1), ht = t_cap / (G - 1), hth = pi / G;

  // Coarse pass, parallel over theta slices with an ordered merge.
  GridResult grid;
  grid.values.assign(static_cast<size_t>(G) * G * G, 0.0);
  int nthreads = std::max(1, cfg.threads);
  std::vector<std::future<void>> futs;
  std::atomic<int> next_slice{0};
  auto worker = [&]() {
    while (true) {
      int k = next_slice.fetch_add(1);
      if (k >= G) return;
      double theta = k * hth;
      for (int j = 0; j < G; ++j) {
        double t = j * ht;
        for (int i = 0; i < G; ++i) {
          double x = i * hx;
          grid.values[(static_cast<size_t>(k) * G + j) * G + i] =
              fam.eval(x, t, theta);
        }
      }
    }
  };
  for (int w = 0; w < nthreads; ++w)
    futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();

  auto value_at = [&](int i, int j, int k) {
    return grid.values[(static_cast<size_t>(k) * G + j) * G + i];
  };
  for (int k = 0; k < G; ++k)
    for (int j = 0; j < G; ++j)
      for (int i = 0; i < G; ++i) {
        double f = value_at(i, j, k);
        if (f > grid.best_f) {
          grid.best_f = f;
          grid.best = {i * hx, j * ht, k * hth};
        }
      }

  // Refinement: simplex restarts with shrinking scale, then polish.
  Point3 p = grid.best;
  double fbest = grid.best_f;
  for (int r = 0; r < cfg.nm_restarts; ++r) {
    double scale = std::max({hx, ht, hth}) / std::pow(4.0, r);
    double f = 0;
    Point3 q = nelder_mead(fam, p, scale, cfg.nm_iterations, &f);
    if (f > fbest) {
      fbest = f;
      p = q;
    }
  }
  double fpolish = 0;
  Point3 pp = polish(fam, p, cfg.polish_h, &fpolish);
  if (fpolish > fbest) {
    fbest = fpolish;
    p = pp;
  }

  // Modulus of continuity on the refinement grid around the argmax: the
  // six polish_h-probes measure how fast the objective still moves at the
  // final resolution, which bounds how far the located maximum can sit
  // from the reported value. The coarse grid pins the basin; its own
  // modulus is useless here because the family oscillates on scale
  // e^{-2t} in x near t_cap.
  double local_mod = 0;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sgn : {-1, 1}) {
      Point3 q = p;
      (axis == 0 ? q.x : axis == 1 ? q.t : q.theta) += sgn * cfg.polish_h;
      local_mod = std::max(local_mod,
                           std::fabs(fam.eval(q.x, q.t, q.theta) - fbest));
    }
  }
  double error_bound = local_mod + 1e-9;

  BigFloat r_hat = fam.eval_big(p.x, p.t, p.theta);
  NumericBasis nb = fam.basis(p.x, p.t, p.theta);
  Mat2 m{NumberValue(nb.b00), NumberValue(nb.b01), NumberValue(nb.b10),
         NumberValue(nb.b11)};
  auto argmax = std::make_shared<PlanarLattice>(std::move(m), "critical-argmax");

  CriticalData cd;
  cd.r_hat = r_hat;
  cd.error_bound = error_bound;
  cd.argmax = argmax;
  cd.t_cap = t_cap;
  cd.config_echo = cfg.to_json();
  cd.config_echo["c_lo"] = c_lo;
  cd.config_echo["c_hi"] = c_hi;
  cd.config_echo["grid_best"] = grid.best_f;
  nu.set_critical(cd);
  return nu.critical();
}

std::vector<PlanarLattice> locus_sample(const NormBody& nu, double tol,
                                        const OptimizerConfig& cfg) {
  const CriticalData& cd = critical_radius(nu, cfg);
  double r_hat = cd.r_hat.to_double();
  if (tol <= cd.error_bound * 0.01)
    fail(ErrorCode::invalid_argument,
         "locus tolerance is far below the optimizer resolution");
  Family fam{&nu, default_precision()};
  const int TH = cfg.locus_theta_grid;
  const int G = std::max(12, cfg.grid / 2);
  const double pi = 3.14159265358979323846;
  // Near-critical lattices all have a primitive vector of Euclidean length
  // lambda_2 <= 2 c_hi / (sqrt3 (r_hat - tol)), so representatives exist
  // with t in this window; larger t only adds resonant copies whose basins
  // trap the slice descent.
  double t_loc = std::log(2.0 * nu.c_hi() / (std::sqrt(3.0) * (r_hat - tol)));
  t_loc = std::min(std::max(t_loc, 0.2), cd.t_cap);
  const double hx = 1.0 / (G - 1), ht = t_loc / (G - 1);

  std::vector<PlanarLattice> samples;
  for (int k = 0; k < TH; ++k) {
    double theta = k * pi / TH;
    // Slice-best over (x, t), then a 2D refinement at fixed theta.
    double best = -1;
    Point3 bp{0, 0, theta};
    for (int j = 0; j < G; ++j)
      for (int i = 0; i < G; ++i) {
        double f = fam.eval(i * hx, j * ht, theta);
        if (f > best) {
          best = f;
          bp = {i * hx, j * ht, theta};
        }
      }
    // Loose pre-gate only; the decisive gate uses the refined value.
    if (best < r_hat - std::max(0.05, 10 * tol)) continue;
    // Alternate a 2D simplex over (x, t) with a theta line search. The
    // simplex handles the diagonal ridges of lambda_1 that coordinate
    // descent stalls on; the theta search lets a slice sitting between
    // two primitive directions of the critical lattice slide onto one,
    // while staying local enough to keep distinct slices distinct.
    double theta_reach = std::max(2e-2, 0.55 * pi / TH);
    for (int outer = 0; outer < 15; ++outer) {
      double before = best;
      double scale = 2.0 * std::max(hx, ht) / (1 << std::min(outer, 3));
      double f2d = 0;
      Point3 q = nelder_mead_2d(fam, bp, scale, cfg.nm_iterations / 2, &f2d);
      if (f2d > best) {
        best = f2d;
        bp = q;
      }
      double fth = 0;
      Point3 qt = theta_line_search(fam, bp, theta_reach, &fth);
      if (fth > best) {
        best = fth;
        bp = qt;
      }
      // Rotational flatness is quadratic near a locus point, so keep
      // pulling while the gain is above noise; flat families stop at once.
      if (outer >= 2 && best - before < 1e-9) break;
    }
    double fp = 0;
    bp = polish(fam, bp, cfg.polish_h, &fp);
    if (fp < best) fp = best;
    if (std::getenv("LATORB_DEBUG_LOCUS"))
      std::fprintf(stderr, "slice %d theta=%.4f best=%.9f fp=%.9f at (%.4f, %.4f, %.4f) gate=%.9f\n",
                   k, theta, best, fp, bp.x, bp.t, bp.theta, r_hat - tol);
    if (fp < r_hat - tol) continue;
    NumericBasis nb = fam.basis(bp.x, bp.t, bp.theta);
    Mat2 m{NumberValue(nb.b00), NumberValue(nb.b01), NumberValue(nb.b10),
           NumberValue(nb.b11)};
    PlanarLattice lat(std::move(m), "locus-sample");
    // Re-verify before accepting.
    if (shortest_vector(lat, nu).value.to_double() < r_hat - tol) continue;
    bool dup = false;
    for (const auto& s : samples)
      if (aligned_distance(s, lat) < 1e-3) {
        dup = true;
        break;
      }
    if (!dup) samples.push_back(std::move(lat));
  }
  if (samples.empty())
    fail(ErrorCode::no_convergence,
         "no locus samples at this tolerance; it sits below the error bound");
  nu.set_locus_samples(samples);
  return samples;
}

NormBody conjugate_norm(const NormBody& nu, const GroupElement& g) {
  return NormBody::conjugated(nu, g);
}

GroupElement conjugator_to_target(const NormBody& nu,
                                  const PlanarLattice& target) {
  if (!nu.has_critical())
    fail(ErrorCode::domain, "critical radius not yet computed");
  const CriticalData& cd = nu.critical();
  if (!cd.argmax) fail(ErrorCode::internal, "missing argmax lattice");
  Mat2 g = target.basis() * cd.argmax->basis().inverse();
  return GroupElement(std::move(g));
}

}  // namespace latorb
