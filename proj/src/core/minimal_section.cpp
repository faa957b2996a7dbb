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

#include "core/minimal_section.hpp"

#include <algorithm>
#include <sstream>

#include "core/errors.hpp"

namespace latorb {

namespace {

mpz_class ceil_bound(const NumberValue& v) {
  // Smallest integer >= v, plus one for slack.
  return -((-v).floor_exact()) + 1;
}

// Integer i-range of |i*A + C| <= D for exact A != 0, as [lo, hi];
// nullopt when A == 0 (caller checks |C| <= D directly).
std::optional<std::pair<mpz_class, mpz_class>> solve_i_range(
    const NumberValue& A, const NumberValue& C, const NumberValue& D) {
  if (A.is_zero()) return std::nullopt;
  NumberValue lo = (-D - C) / A;
  NumberValue hi = (D - C) / A;
  if (A.sign() < 0) std::swap(lo, hi);
  mpz_class ilo = -((-lo).floor_exact());  // ceil(lo)
  mpz_class ihi = hi.floor_exact();
  return std::make_pair(ilo, ihi);
}

// Visits every nonzero lattice vector w = i b0 + j b1 with |w1| <= c1 and
// |w2| <= c2, reporting the coordinates (i, j) in the original basis.
// Callback returns false to stop early.
//
// Boxes met here are long slivers (|r1| shrinks while |s2| grows along a
// chain), so coefficients in the original basis can be astronomically
// large while the box holds only a few points. The enumeration therefore
// switches to a basis reduced against the box metric diag(1/c1, 1/c2):
// the reducing transform U is exact and unimodular, and the coefficient
// bounds are recomputed exactly in the new basis, so completeness does not
// depend on the quality of the numeric reduction.
template <typename F>
void for_each_in_box(const PlanarLattice& lat, const NumberValue& c1,
                     const NumberValue& c2, F&& visit) {
  const Mat2& B = lat.basis();
  bool z1 = c1.is_zero(), z2 = c2.is_zero();
  if (z1 && z2) return;
  if (z1 || z2) {
    // Degenerate box: a segment on one coordinate axis. Lattice points on
    // the axis form k * (i0, j0) for a primitive integer solution of
    // w_axis = 0, which exists only when the entry ratio is rational.
    const NumberValue& a = z2 ? B.m10 : B.m00;  // coefficient of i
    const NumberValue& b = z2 ? B.m11 : B.m01;  // coefficient of j
    mpz_class i0, j0;
    if (b.is_zero()) {
      i0 = 0;
      j0 = 1;
    } else if (a.is_zero()) {
      i0 = 1;
      j0 = 0;
    } else {
      NumberValue ratio = -(a / b);  // j/i for w_axis = 0
      if (!ratio.is_rational()) return;
      i0 = ratio.as_rational().get_den();
      j0 = ratio.as_rational().get_num();
    }
    Vec2 step = lat.vector_at(i0, j0);
    const NumberValue& reach = z2 ? step.x : step.y;
    const NumberValue& cap = z2 ? c1 : c2;
    if (reach.is_zero())
      fail(ErrorCode::invalid_argument, "degenerate basis column");
    mpz_class kmax = (cap / reach.abs()).floor_exact();
    for (mpz_class k = 1; k <= kmax; ++k) {
      for (int sgn : {1, -1}) {
        mpz_class i = sgn * k * i0, j = sgn * k * j0;
        Vec2 w = lat.vector_at(i, j);
        if (w.x.abs().cmp(c1) > 0 || w.y.abs().cmp(c2) > 0) continue;
        if (!visit(w, i, j)) return;
      }
    }
    return;
  }

  // Numeric reduction of the scaled basis, tracking exact coordinates.
  unsigned prec = default_precision();
  BigFloat f1 = c1.to_bigfloat(prec), f2 = c2.to_bigfloat(prec);
  BigFloat ux = B.m00.to_bigfloat(prec) / f1, uy = B.m10.to_bigfloat(prec) / f2;
  BigFloat vx = B.m01.to_bigfloat(prec) / f1, vy = B.m11.to_bigfloat(prec) / f2;
  mpz_class cu_i = 1, cu_j = 0, cv_i = 0, cv_j = 1;
  BigFloat half = BigFloat::from_double(0.5, prec);
  for (int iter = 0; iter < 128; ++iter) {
    BigFloat nu = ux * ux + uy * uy;
    BigFloat nv = vx * vx + vy * vy;
    if (nu.cmp(nv) > 0) {
      std::swap(ux, vx);
      std::swap(uy, vy);
      std::swap(cu_i, cv_i);
      std::swap(cu_j, cv_j);
      std::swap(nu, nv);
    }
    if (nu.is_zero() || !nu.is_finite()) break;
    BigFloat q = (ux * vx + uy * vy) / nu;
    if (q.abs().cmp(half) <= 0) break;
    mpz_class mu = q.round_to_mpz();
    BigFloat muf = BigFloat::from_mpz(mu, prec);
    BigFloat wx = vx - muf * ux;
    BigFloat wy = vy - muf * uy;
    if ((wx * wx + wy * wy).cmp(nv) >= 0) break;
    vx = wx;
    vy = wy;
    cv_i -= mu * cu_i;
    cv_j -= mu * cu_j;
  }

  // Exact reduced basis and exact adjugate bounds (det stays +-1).
  Vec2 bu = lat.vector_at(cu_i, cu_j);
  Vec2 bv = lat.vector_at(cv_i, cv_j);
  mpz_class imax = ceil_bound(bv.y.abs() * c1 + bv.x.abs() * c2);
  mpz_class jmax = ceil_bound(bu.y.abs() * c1 + bu.x.abs() * c2);
  if (imax > 2000000 || jmax > 2000000)
    fail(ErrorCode::resource, "box enumeration bounds did not reduce");
  for (mpz_class j = -jmax; j <= jmax; ++j) {
    NumberValue jn{j};
    // Intersect i-ranges of |i u_x + j v_x| <= c1 and |i u_y + j v_y| <= c2.
    auto r1 = solve_i_range(bu.x, jn * bv.x, c1);
    auto r2 = solve_i_range(bu.y, jn * bv.y, c2);
    mpz_class ilo, ihi;
    if (r1 && r2) {
      ilo = std::max(r1->first, r2->first);
      ihi = std::min(r1->second, r2->second);
    } else if (r1) {
      if ((jn * bv.y).abs().cmp(c2) > 0) continue;
      ilo = r1->first;
      ihi = r1->second;
    } else if (r2) {
      if ((jn * bv.x).abs().cmp(c1) > 0) continue;
      ilo = r2->first;
      ihi = r2->second;
    } else {
      fail(ErrorCode::invalid_argument, "degenerate basis column");
    }
    if (ilo < -imax) ilo = -imax;
    if (ihi > imax) ihi = imax;
    for (mpz_class i = ilo; i <= ihi; ++i) {
      if (i == 0 && j == 0) continue;
      Vec2 w = NumberValue(i) * bu + NumberValue(j) * bv;
      if (w.x.abs().cmp(c1) > 0 || w.y.abs().cmp(c2) > 0) continue;
      mpz_class oi = i * cu_i + j * cv_i;
      mpz_class oj = i * cu_j + j * cv_j;
      if (!visit(w, oi, oj)) return;
    }
  }
}

Vec2 abs_pair(const Vec2& v) { return {v.x.abs(), v.y.abs()}; }

}  // namespace

nlohmann::ordered_json SectionPoint::to_json() const {
  nlohmann::ordered_json j;
  j["x"] = x.to_json();
  j["y"] = y.to_json();
  j["eps"] = eps;
  return j;
}

SectionPoint section_point_parse(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3)
    fail(ErrorCode::invalid_argument, "section point literal needs x,y[,eps]");
  SectionPoint sp;
  sp.x = NumberValue::parse(parts[0]);
  sp.y = NumberValue::parse(parts[1]);
  sp.eps = 1;
  if (parts.size() == 3) {
    if (parts[2] == "+1" || parts[2] == "1")
      sp.eps = 1;
    else if (parts[2] == "-1")
      sp.eps = -1;
    else
      fail(ErrorCode::invalid_argument, "eps must be +1 or -1");
  }
  return sp;
}

bool is_minimal(const PlanarLattice& lat, const Vec2& v, long search_bound) {
  if (!lat.is_exact() || !v.x.is_exact() || !v.y.is_exact())
    fail(ErrorCode::domain, "is_minimal needs exact data");
  if (v.x.is_zero() && v.y.is_zero())
    fail(ErrorCode::invalid_argument, "zero vector is not minimal");
  if (!lat.coords_of(v))
    fail(ErrorCode::invalid_argument, "vector is not a lattice member");
  Vec2 a = abs_pair(v);
  bool minimal = true;
  if (search_bound > 0) {
    // Caller-supplied bound: plain square enumeration.
    for (long i = -search_bound; i <= search_bound && minimal; ++i) {
      for (long j = -search_bound; j <= search_bound; ++j) {
        if (i == 0 && j == 0) continue;
        Vec2 w = lat.vector_at(i, j);
        if (w.x.abs().cmp(a.x) > 0 || w.y.abs().cmp(a.y) > 0) continue;
        if (!(w.x.abs() == a.x) || !(w.y.abs() == a.y)) {
          minimal = false;
          break;
        }
      }
    }
    return minimal;
  }
  for_each_in_box(lat, a.x, a.y,
                  [&](const Vec2& w, const mpz_class&, const mpz_class&) {
                    if (!(w.x.abs() == a.x) || !(w.y.abs() == a.y)) {
                      minimal = false;
                      return false;
                    }
                    return true;
                  });
  return minimal;
}

namespace {

// Open-rectangle property of a consecutive pair: no nonzero lattice point
// with |w1| < r1_abs and |w2| < s2_abs.
bool open_rectangle_empty(const PlanarLattice& lat, const NumberValue& r1_abs,
                          const NumberValue& s2_abs) {
  bool empty = true;
  for_each_in_box(lat, r1_abs, s2_abs,
                  [&](const Vec2& w, const mpz_class&, const mpz_class&) {
                    if (w.x.abs().cmp(r1_abs) < 0 && w.y.abs().cmp(s2_abs) < 0) {
                      empty = false;
                      return false;
                    }
                    return true;
                  });
  return empty;
}

Vec2 canonical_rep(const Vec2& v) {
  int sy = v.y.sign();
  if (sy < 0) return -v;
  if (sy == 0 && v.x.sign() < 0) return -v;
  return v;
}

}  // namespace

InitialPairResult initial_pair(const PlanarLattice& lat) {
  if (!lat.is_exact())
    fail(ErrorCode::domain, "initial_pair needs an exact basis");
  for (long B = 4; B <= 4096; B *= 2) {
    // Gather candidates sorted by (|v2|, |v1|), one per +- class.
    std::vector<Vec2> cands;
    for (long i = -B; i <= B; ++i) {
      for (long j = -B; j <= B; ++j) {
        if (i == 0 && j == 0) continue;
        if (j < 0 || (j == 0 && i < 0)) continue;  // one of each +- pair
        cands.push_back(lat.vector_at(i, j));
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Vec2& a, const Vec2& b) {
      int c = a.y.abs().cmp(b.y.abs());
      if (c != 0) return c < 0;
      return a.x.abs().cmp(b.x.abs()) < 0;
    });
    std::optional<Vec2> r, s;
    for (const Vec2& v : cands) {
      if (!r) {
        if (is_minimal(lat, v)) r = v;
        continue;
      }
      if (v.y.abs().cmp(r->y.abs()) == 0) continue;
      if (is_minimal(lat, v)) {
        s = v;
        break;
      }
    }
    if (!r || !s) continue;
    Vec2 rv = canonical_rep(*r);
    Vec2 sv = canonical_rep(*s);
    // Certify consecutiveness via the open-rectangle property.
    if (!open_rectangle_empty(lat, rv.x.abs(), sv.y.abs())) continue;
    if (rv.y.is_zero() && (rv.x * sv.x).sign() > 0) rv = -rv;
    InitialPairResult out{MinimalPair{rv, sv, lat}, false};
    out.axis_degenerate = sv.x.is_zero();
    return out;
  }
  fail(ErrorCode::no_convergence, "no consecutive pair found within search bounds");
}

SectionPoint section_coords(const MinimalPair& p) {
  if (p.r.x.is_zero())
    fail(ErrorCode::invalid_argument, "pair has r1 = 0; corrupted input");
  SectionPoint sp;
  sp.x = -(p.s.x / p.r.x);
  sp.y = p.r.y / p.s.y;
  sp.eps = p.r.x.sign();
  return sp;
}

MinimalPair next_minimal(const MinimalPair& p) {
  SectionPoint sp = section_coords(p);
  if (sp.x.is_zero())
    fail(ErrorCode::domain, "axis reached: chain terminates at x = 0");
  mpz_class n = sp.x.inverse().floor_exact();
  Vec2 w = p.r + (NumberValue(n) * p.s);
  return MinimalPair{p.s, w, p.host};
}

std::pair<NumberValue, NumberValue> gauss_T(const NumberValue& x,
                                            const NumberValue& y) {
  if (!x.is_exact() || !y.is_exact())
    fail(ErrorCode::domain, "gauss map needs exact arguments");
  NumberValue one{mpq_class(1)};
  bool y_zero = y.is_zero();
  if (x.sign() <= 0 || x.cmp(one) >= 0)
    fail(ErrorCode::domain, "T domain: x must lie in (0,1)");
  if (y_zero) {
    if (x.cmp(NumberValue::rational(1, 2)) > 0)
      fail(ErrorCode::domain, "T domain: y = 0 needs x <= 1/2");
  } else if (y.sign() < 0 || y.cmp(one) >= 0) {
    fail(ErrorCode::domain, "T domain: y must lie in [0,1)");
  }
  NumberValue inv = x.inverse();
  mpz_class n = inv.floor_exact();
  return {inv - NumberValue(n), (NumberValue(n) + y).inverse()};
}

std::pair<NumberValue, NumberValue> gauss_S(const NumberValue& a,
                                            const NumberValue& b) {
  if (!a.is_exact() || !b.is_exact())
    fail(ErrorCode::domain, "gauss map needs exact arguments");
  NumberValue one{mpq_class(1)};
  bool a_zero = a.is_zero();
  if (b.sign() <= 0 || b.cmp(one) >= 0)
    fail(ErrorCode::domain, "S domain: b must lie in (0,1)");
  if (a_zero) {
    if (b.cmp(NumberValue::rational(1, 2)) > 0)
      fail(ErrorCode::domain, "S domain: a = 0 needs b <= 1/2");
  } else if (a.sign() < 0 || a.cmp(one) >= 0) {
    fail(ErrorCode::domain, "S domain: a must lie in [0,1)");
  }
  NumberValue inv = b.inverse();
  mpz_class n = inv.floor_exact();
  return {(a + NumberValue(n)).inverse(), inv - NumberValue(n)};
}

std::pair<PlanarLattice, MinimalPair> reconstruct_lattice(const SectionPoint& sp) {
  if (sp.eps != 1 && sp.eps != -1)
    fail(ErrorCode::invalid_argument, "eps must be +1 or -1");
  const NumberValue& x = sp.x;
  const NumberValue& y = sp.y;
  NumberValue one{mpq_class(1)};
  NumberValue half = NumberValue::rational(1, 2);
  bool interior = x.sign() > 0 && x.cmp(one) < 0 && y.sign() > 0 && y.cmp(one) < 0;
  bool x_axis = y.is_zero() && x.sign() >= 0 && x.cmp(half) <= 0;
  bool y_axis = x.is_zero() && y.sign() >= 0 && y.cmp(half) <= 0;
  if (!interior && !x_axis && !y_axis)
    fail(ErrorCode::domain, "(x, y) lies outside U");

  NumberValue den = one + x * y;
  NumberValue eps{static_cast<long>(sp.eps)};
  Vec2 r{eps, y / den};
  Vec2 s{-(eps * x), one / den};
  PlanarLattice lat(Mat2::from_columns(r, s), "reconstructed");
  return {lat, MinimalPair{r, s, lat}};
}

std::string SectionChain::to_json_lines() const {
  std::ostringstream os;
  for (const auto& st : steps) {
    nlohmann::ordered_json j;
    j["n"] = st.n;
    j["x"] = st.sp.x.to_json();
    j["y"] = st.sp.y.to_json();
    j["eps"] = st.sp.eps;
    j["r"] = {st.r.x.to_json(), st.r.y.to_json()};
    j["s"] = {st.s.x.to_json(), st.s.y.to_json()};
    os << j.dump() << "\n";
  }
  return os.str();
}

SectionChain section_chain(const PlanarLattice& lat, size_t depth) {
  SectionChain chain;
  InitialPairResult init = initial_pair(lat);
  MinimalPair p = init.pair;
  for (size_t n = 0; n <= depth; ++n) {
    SectionPoint sp = section_coords(p);
    chain.steps.push_back({n, sp, p.r, p.s});
    if (sp.x.is_zero()) {
      chain.terminal = true;
      break;
    }
    if (n == depth) break;
    p = next_minimal(p);
  }
  return chain;
}

PrecompactReport precompact_test(const PlanarLattice& lat, size_t depth) {
  InitialPairResult init = initial_pair(lat);
  PrecompactReport rep;
  rep.seed = section_coords(init.pair);

  auto expand = [&](const NumberValue& v, std::vector<mpz_class>& digits,
                    std::optional<PeriodicTail>& period,
                    mpz_class& max_digit) -> bool {
    // Returns false when the coordinate is rational (divergent orbit).
    if (v.is_zero()) return false;
    if (v.is_rational()) {
      digits = cf_digits(v, depth);
      for (const auto& d : digits) max_digit = std::max(max_digit, d);
      return false;
    }
    try {
      PeriodicTail t = detect_period(v.as_surd());
      for (const auto& d : t.preperiod) max_digit = std::max(max_digit, d);
      for (const auto& d : t.period) max_digit = std::max(max_digit, d);
      for (size_t i = 0; i < depth; ++i) digits.push_back(t.digit(i));
      period = std::move(t);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_convergence) throw;
      digits = cf_digits(v, depth);
      for (const auto& d : digits) max_digit = std::max(max_digit, d);
      period.reset();
    }
    return true;
  };

  rep.max_digit_x = 0;
  rep.max_digit_y = 0;
  bool x_ok = expand(rep.seed.x, rep.digits_x, rep.period_x, rep.max_digit_x);
  bool y_ok = expand(rep.seed.y, rep.digits_y, rep.period_y, rep.max_digit_y);

  if (!x_ok || !y_ok) {
    rep.verdict = PrecompactReport::Verdict::divergent_rational;
    rep.detail = std::string("divergent: rational coordinate ") +
                 (!x_ok ? "x" : "y");
  } else if (rep.period_x && rep.period_y) {
    rep.verdict = PrecompactReport::Verdict::certified;
    rep.detail = "precompact certified: both coordinate expansions periodic";
  } else {
    rep.verdict = PrecompactReport::Verdict::bounded_to_depth;
    rep.detail = "bounded to finite depth (heuristic)";
  }
  return rep;
}

nlohmann::ordered_json PrecompactReport::to_json() const {
  nlohmann::ordered_json j;
  switch (verdict) {
    case Verdict::certified: j["verdict"] = "certified"; break;
    case Verdict::bounded_to_depth: j["verdict"] = "bounded_to_depth"; break;
    case Verdict::divergent_rational: j["verdict"] = "divergent_rational"; break;
  }
  j["detail"] = detail;
  j["seed"] = seed.to_json();
  j["max_digit_x"] = max_digit_x.get_str();
  j["max_digit_y"] = max_digit_y.get_str();
  auto dump_digits = [](const std::vector<mpz_class>& ds) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& d : ds) a.push_back(d.get_str());
    return a;
  };
  j["digits_x"] = dump_digits(digits_x);
  j["digits_y"] = dump_digits(digits_y);
  auto dump_period = [&](const std::optional<PeriodicTail>& p)
      -> nlohmann::ordered_json {
    if (!p) return nullptr;
    return {{"preperiod", dump_digits(p->preperiod)},
            {"period", dump_digits(p->period)}};
  };
  j["period_x"] = dump_period(period_x);
  j["period_y"] = dump_period(period_y);
  return j;
}

SectionChainWalker::SectionChainWalker(const PlanarLattice& lat)
    : pair_(initial_pair(lat).pair) {
  point_ = section_coords(pair_);
  // g_{t_0} Lambda = M(x_0, y_0) Z^2 with e^{t_0} = 1/|r1|.
  t_ = -pair_.r.x.abs().to_bigfloat().log();
}

bool SectionChainWalker::step() {
  if (terminal()) return false;
  BigFloat dt = -point_.x.to_bigfloat().log();
  pair_ = next_minimal(pair_);
  point_ = section_coords(pair_);
  t_ = t_ + dt;
  ++n_;
  return true;
}

}  // namespace latorb
