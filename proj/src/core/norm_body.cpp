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

#include "core/norm_body.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "core/errors.hpp"

namespace latorb {

struct NormBody::State {
  Kind kind = Kind::sup;
  double p = 2.0;  // pnorm exponent

  // Polygon data: vertices sorted by angle, plus per-face scaled normals
  // (nx, ny) with the gauge nu(v) = max_k (nx_k v_x + ny_k v_y).
  std::vector<Vec2> vertices;
  std::vector<std::pair<BigFloat, BigFloat>> face_normals;

  // Conjugated data.
  std::shared_ptr<NormBody> base;
  std::optional<GroupElement> g;
  // Numeric inverse of g at default precision.
  std::optional<NumericBasis> g_inv;

  mutable std::mutex mu;
  mutable std::optional<std::pair<double, double>> equiv;  // c_lo, c_hi
  mutable std::optional<CriticalData> critical;
  mutable std::optional<std::vector<PlanarLattice>> locus;
};

namespace {

// Scaled outward normals for each face of a symmetric convex polygon:
// for face (v_k, v_{k+1}) the gauge contribution is <v, n>/h with
// n = perp(v_{k+1} - v_k), h = <v_k, n>.
void build_polygon(std::vector<Vec2>& vs,
                   std::vector<std::pair<BigFloat, BigFloat>>& face_normals) {
  if (vs.size() < 4 || vs.size() % 2 != 0)
    fail(ErrorCode::invalid_argument,
         "polygon needs an even number >= 4 of vertices");
  std::sort(vs.begin(), vs.end(), [](const Vec2& a, const Vec2& b) {
    double aa = std::atan2(a.y.to_bigfloat(64).to_double(),
                           a.x.to_bigfloat(64).to_double());
    double ab = std::atan2(b.y.to_bigfloat(64).to_double(),
                           b.x.to_bigfloat(64).to_double());
    return aa < ab;
  });
  size_t n = vs.size();
  // Central symmetry: v_{k + n/2} == -v_k.
  for (size_t k = 0; k < n / 2; ++k) {
    if (!(vs[k + n / 2] == -vs[k]))
      fail(ErrorCode::invalid_argument, "polygon is not centrally symmetric");
  }
  // Convexity: consecutive edge cross products all positive.
  for (size_t k = 0; k < n; ++k) {
    const Vec2& a = vs[k];
    const Vec2& b = vs[(k + 1) % n];
    const Vec2& c = vs[(k + 2) % n];
    Vec2 e1 = b - a, e2 = c - b;
    NumberValue cross = e1.x * e2.y - e1.y * e2.x;
    if (cross.sign() <= 0)
      fail(ErrorCode::invalid_argument, "polygon vertices are not convex");
  }
  unsigned prec = default_precision();
  for (size_t k = 0; k < n; ++k) {
    const Vec2& a = vs[k];
    const Vec2& b = vs[(k + 1) % n];
    Vec2 e = b - a;
    NumberValue nx = e.y, ny = -e.x;
    NumberValue h = a.x * nx + a.y * ny;
    if (h.sign() <= 0)
      fail(ErrorCode::invalid_argument, "polygon does not contain the origin");
    face_normals.emplace_back((nx / h).to_bigfloat(prec),
                              (ny / h).to_bigfloat(prec));
  }
}

}  // namespace

NormBody NormBody::sup() {
  NormBody n;
  n.state_ = std::make_shared<State>();
  n.state_->kind = Kind::sup;
  return n;
}

NormBody NormBody::euclidean() {
  NormBody n;
  n.state_ = std::make_shared<State>();
  n.state_->kind = Kind::euclidean;
  return n;
}

NormBody NormBody::pnorm(double p) {
  if (!(p >= 1.0))
    fail(ErrorCode::invalid_argument, "p-norm exponent must be >= 1");
  NormBody n;
  n.state_ = std::make_shared<State>();
  n.state_->kind = Kind::pnorm;
  n.state_->p = p;
  return n;
}

NormBody NormBody::polygon(std::vector<Vec2> vertices) {
  NormBody n;
  n.state_ = std::make_shared<State>();
  n.state_->kind = Kind::polygon;
  n.state_->vertices = std::move(vertices);
  build_polygon(n.state_->vertices, n.state_->face_normals);
  return n;
}

NormBody NormBody::hexagon() {
  // Vertices (+-1, 0), (+-1/2, +-sqrt(3)/2) -- exact surd data.
  NumberValue half = NumberValue::rational(1, 2);
  NumberValue s3h{QuadraticSurd(0, 1, 2, 3)};  // sqrt(3)/2
  std::vector<Vec2> v = {
      {NumberValue(1), NumberValue(0)},  {half, s3h},  {-half, s3h},
      {NumberValue(-1), NumberValue(0)}, {-half, -s3h}, {half, -s3h}};
  return polygon(std::move(v));
}

NormBody NormBody::conjugated(const NormBody& base, const GroupElement& g) {
  NormBody n;
  n.state_ = std::make_shared<State>();
  n.state_->kind = Kind::conjugated;
  n.state_->base = std::make_shared<NormBody>(base);
  n.state_->g = g;
  GroupElement gi = g.inverse();
  const Mat2& m = gi.matrix();
  unsigned prec = default_precision();
  n.state_->g_inv = NumericBasis{m.m00.to_bigfloat(prec), m.m01.to_bigfloat(prec),
                                 m.m10.to_bigfloat(prec), m.m11.to_bigfloat(prec)};
  // Critical radius is conjugation invariant; the locus maps by g.
  if (base.has_critical()) {
    CriticalData cd = base.critical();
    if (cd.argmax)
      cd.argmax = std::make_shared<PlanarLattice>(act(g, *cd.argmax));
    n.state_->critical = std::move(cd);
  }
  if (base.has_locus()) {
    std::vector<PlanarLattice> mapped;
    for (const auto& lat : base.locus_samples()) mapped.push_back(act(g, lat));
    n.state_->locus = std::move(mapped);
  }
  return n;
}

NormBody::Kind NormBody::kind() const { return state_->kind; }

std::string NormBody::kind_name() const {
  switch (state_->kind) {
    case Kind::sup: return "sup";
    case Kind::euclidean: return "euclidean";
    case Kind::pnorm: return "pnorm";
    case Kind::polygon: return "polygon";
    case Kind::conjugated: return "conjugated";
  }
  return "?";
}

BigFloat NormBody::evaluate(const BigFloat& x, const BigFloat& y) const {
  const State& st = *state_;
  switch (st.kind) {
    case Kind::sup:
      return max(x.abs(), y.abs());
    case Kind::euclidean:
      return (x * x + y * y).sqrt();
    case Kind::pnorm: {
      BigFloat ax = x.abs(), ay = y.abs();
      if (ax.is_zero()) return ay;
      if (ay.is_zero()) return ax;
      return (ax.pow(st.p) + ay.pow(st.p)).pow(1.0 / st.p);
    }
    case Kind::polygon: {
      BigFloat best;
      bool first = true;
      for (const auto& [nx, ny] : st.face_normals) {
        BigFloat v = nx * x + ny * y;
        if (first || v.cmp(best) > 0) {
          best = v;
          first = false;
        }
      }
      return best;
    }
    case Kind::conjugated: {
      const NumericBasis& gi = *st.g_inv;
      BigFloat ux = gi.b00 * x + gi.b01 * y;
      BigFloat uy = gi.b10 * x + gi.b11 * y;
      return st.base->evaluate(ux, uy);
    }
  }
  fail(ErrorCode::internal, "unhandled norm kind");
}

BigFloat NormBody::evaluate(const Vec2& v) const {
  return evaluate(v.x.to_bigfloat(), v.y.to_bigfloat());
}

namespace {

std::pair<double, double> sample_equivalence(const NormBody& n) {
  const int K = 2048;
  unsigned prec = 128;
  BigFloat pi = BigFloat::pi(prec);
  double lo = 0, hi = 0;
  for (int i = 0; i < K; ++i) {
    BigFloat theta = pi * BigFloat::from_long(i, prec) /
                     BigFloat::from_long(K, prec);
    double v = n.evaluate(theta.cos(), theta.sin()).to_double();
    if (i == 0) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo > 0))
    fail(ErrorCode::invalid_argument, "norm vanishes on the unit circle");
  return {lo / 2.0, hi * 2.0};
}

}  // namespace

double NormBody::c_lo() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (!state_->equiv) state_->equiv = sample_equivalence(*this);
  return state_->equiv->first;
}

double NormBody::c_hi() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (!state_->equiv) state_->equiv = sample_equivalence(*this);
  return state_->equiv->second;
}

bool NormBody::has_critical() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->critical.has_value();
}

const CriticalData& NormBody::critical() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (!state_->critical)
    fail(ErrorCode::domain, "critical radius not yet computed");
  return *state_->critical;
}

void NormBody::set_critical(CriticalData data) const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (state_->critical)
    fail(ErrorCode::domain, "critical data is write-once");
  state_->critical = std::move(data);
}

bool NormBody::has_locus() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->locus.has_value();
}

const std::vector<PlanarLattice>& NormBody::locus_samples() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (!state_->locus) fail(ErrorCode::domain, "locus not yet sampled");
  return *state_->locus;
}

void NormBody::set_locus_samples(std::vector<PlanarLattice> samples) const {
  std::lock_guard<std::mutex> lock(state_->mu);
  state_->locus = std::move(samples);
}

const GroupElement* NormBody::conjugator() const {
  return state_->g ? &*state_->g : nullptr;
}

const NormBody* NormBody::base() const { return state_->base.get(); }

nlohmann::ordered_json NormBody::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_name();
  switch (state_->kind) {
    case Kind::pnorm:
      j["p"] = state_->p;
      break;
    case Kind::polygon: {
      nlohmann::ordered_json vs = nlohmann::ordered_json::array();
      for (const auto& v : state_->vertices)
        vs.push_back({v.x.to_json(), v.y.to_json()});
      j["vertices"] = vs;
      break;
    }
    case Kind::conjugated:
      j["base"] = state_->base->to_json();
      j["g"] = state_->g->to_json();
      break;
    default:
      break;
  }
  return j;
}

NormBody NormBody::from_json(const nlohmann::ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sup") return sup();
  if (kind == "euclidean") return euclidean();
  if (kind == "pnorm") return pnorm(j.at("p").get<double>());
  if (kind == "polygon") {
    std::vector<Vec2> vs;
    for (const auto& v : j.at("vertices"))
      vs.push_back(Vec2{NumberValue::from_json(v.at(0)),
                        NumberValue::from_json(v.at(1))});
    return polygon(std::move(vs));
  }
  if (kind == "conjugated")
    return conjugated(from_json(j.at("base")),
                      GroupElement::from_json(j.at("g")));
  fail(ErrorCode::invalid_argument, "unknown norm kind: " + kind);
}

NormBody NormBody::parse(const std::string& spec) {
  if (spec == "sup") return sup();
  if (spec == "euclidean") return euclidean();
  if (spec == "hexagon") return hexagon();
  if (spec.rfind("pnorm:", 0) == 0) return pnorm(std::stod(spec.substr(6)));
  if (!spec.empty() && spec.front() == '{')
    return from_json(nlohmann::ordered_json::parse(spec));
  fail(ErrorCode::invalid_argument, "unknown norm spec: " + spec);
}

}  // namespace latorb
