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

#include "latorb/latorb.h"

#include <cstring>
#include <sstream>
#include <string>

#include "core/critical_radius.hpp"
#include "core/dimension.hpp"
#include "core/dirichlet.hpp"
#include "core/errors.hpp"
#include "core/minimal_section.hpp"
#include "core/shortest_vector.hpp"
#include "core/synthesis.hpp"

using latorb::Error;
using latorb::ErrorCode;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

latorb_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return LATORB_ERR_INVALID_ARGUMENT;
    case ErrorCode::domain: return LATORB_ERR_DOMAIN;
    case ErrorCode::precision: return LATORB_ERR_PRECISION;
    case ErrorCode::no_convergence: return LATORB_ERR_NO_CONVERGENCE;
    case ErrorCode::resource: return LATORB_ERR_RESOURCE;
    case ErrorCode::internal: return LATORB_ERR_INTERNAL;
  }
  return LATORB_ERR_INTERNAL;
}

template <typename F>
latorb_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    fn();
    return LATORB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LATORB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return LATORB_ERR_INTERNAL;
  }
}

std::vector<mpz_class> parse_digit_csv(const char* csv) {
  if (!csv) latorb::fail(ErrorCode::invalid_argument, "null digit list");
  std::vector<mpz_class> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.emplace_back(item);
  }
  if (out.empty()) latorb::fail(ErrorCode::invalid_argument, "empty digit list");
  return out;
}

std::vector<long> parse_positions(const char* spec) {
  if (!spec || !*spec) return {};
  std::string s(spec);
  if (s.rfind("cubic:", 0) == 0)
    return latorb::sparse_positions(std::stoul(s.substr(6)));
  if (s == "cubic") return latorb::sparse_positions(6);
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  latorb::validate_positions(out);
  return out;
}

latorb::OptimizerConfig parse_opt_config(const char* config_json) {
  if (!config_json || !*config_json) return {};
  return latorb::OptimizerConfig::from_json(
      nlohmann::ordered_json::parse(config_json));
}

nlohmann::ordered_json run_config_echo() {
  nlohmann::ordered_json j;
  j["precision"] = latorb::default_precision();
  return j;
}

}  // namespace

struct latorb_number {
  latorb::NumberValue value;
};

struct latorb_norm {
  latorb::NormBody body;
};

struct latorb_alpha {
  // Either a synthesized stream or an exact number's expansion.
  std::optional<latorb::SynthesizedAlpha> synthesized;
  std::optional<latorb::NumberValue> exact;
  latorb::CFExpansion digits;
};

extern "C" {

const char* latorb_status_name(latorb_status s) {
  switch (s) {
    case LATORB_OK: return "ok";
    case LATORB_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case LATORB_ERR_DOMAIN: return "domain";
    case LATORB_ERR_PRECISION: return "precision";
    case LATORB_ERR_NO_CONVERGENCE: return "no_convergence";
    case LATORB_ERR_RESOURCE: return "resource";
    case LATORB_ERR_INTERNAL: return "internal";
  }
  return "?";
}

const char* latorb_last_error(void) { return g_last_error.c_str(); }

void latorb_string_free(char* s) { std::free(s); }

unsigned latorb_default_precision(void) { return latorb::default_precision(); }

latorb_status latorb_set_default_precision(unsigned bits) {
  return guarded([&] { latorb::set_default_precision(bits); });
}

latorb_status latorb_number_parse(const char* literal, latorb_number** out) {
  return guarded([&] {
    if (!literal || !out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    *out = new latorb_number{latorb::NumberValue::parse(literal)};
  });
}

latorb_status latorb_number_to_json(const latorb_number* x, char** json_out) {
  return guarded([&] {
    if (!x || !json_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    *json_out = dup_string(x->value.to_json().dump());
  });
}

void latorb_number_free(latorb_number* x) { delete x; }

latorb_status latorb_cf_expand(const latorb_number* x, size_t n,
                               char** json_out) {
  return guarded([&] {
    if (!x || !json_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto digits = latorb::cf_digits(x->value, n);
    nlohmann::ordered_json j;
    j["schema"] = "lattice-orbits/1";
    j["config"] = run_config_echo();
    j["requested"] = n;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : digits) arr.push_back(d.get_str());
    j["digits"] = arr;
    j["terminated"] = digits.size() < n;
    *json_out = dup_string(j.dump());
  });
}

latorb_status latorb_cf_convergents(const char* digits_csv, char** json_out) {
  return guarded([&] {
    if (!json_out) latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto digits = parse_digit_csv(digits_csv);
    auto conv = latorb::convergents(digits);
    nlohmann::ordered_json j;
    j["schema"] = "lattice-orbits/1";
    j["config"] = run_config_echo();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : conv)
      arr.push_back({{"p", c.p.get_str()}, {"q", c.q.get_str()}});
    j["convergents"] = arr;
    *json_out = dup_string(j.dump());
  });
}

latorb_status latorb_cf_cylinder(const char* index_csv, char** json_out) {
  return guarded([&] {
    if (!json_out) latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto index = parse_digit_csv(index_csv);
    latorb::CylinderInterval c = latorb::cylinder(index);
    nlohmann::ordered_json j;
    j["schema"] = "lattice-orbits/1";
    j["config"] = run_config_echo();
    j["lo"] = c.lo.get_str();
    j["lo_closed"] = c.lo_closed;
    j["hi"] = c.hi.get_str();
    j["hi_closed"] = c.hi_closed;
    j["length"] = c.length().get_str();
    j["sigma"] = c.sigma.get_str();
    j["p_prev"] = c.conv_prev.p.get_str();
    j["q_prev"] = c.conv_prev.q.get_str();
    j["p_last"] = c.conv_last.p.get_str();
    j["q_last"] = c.conv_last.q.get_str();
    *json_out = dup_string(j.dump());
  });
}

latorb_status latorb_norm_create(const char* spec, latorb_norm** out) {
  return guarded([&] {
    if (!spec || !out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    *out = new latorb_norm{latorb::NormBody::parse(spec)};
  });
}

latorb_status latorb_norm_to_json(const latorb_norm* nu, char** json_out) {
  return guarded([&] {
    if (!nu || !json_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    *json_out = dup_string(nu->body.to_json().dump());
  });
}

namespace {

nlohmann::ordered_json critical_report(const latorb::NormBody& nu) {
  const latorb::CriticalData& cd = nu.critical();
  nlohmann::ordered_json j;
  j["schema"] = "lattice-orbits/1";
  j["config"] = cd.config_echo;
  j["norm"] = nu.to_json();
  j["r_hat"] = cd.r_hat.to_string();
  j["r_hat_hex"] = cd.r_hat.to_hex_string();
  j["error_bound"] = cd.error_bound;
  j["t_cap"] = cd.t_cap;
  j["argmax"] = cd.argmax ? cd.argmax->to_json() : nlohmann::ordered_json();
  return j;
}

}  // namespace

latorb_status latorb_norm_critical(latorb_norm* nu, const char* config_json,
                                   char** report_out) {
  return guarded([&] {
    if (!nu || !report_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    latorb::critical_radius(nu->body, parse_opt_config(config_json));
    *report_out = dup_string(critical_report(nu->body).dump());
  });
}

latorb_status latorb_norm_locus(latorb_norm* nu, double tol,
                                const char* config_json, char** report_out) {
  return guarded([&] {
    if (!nu || !report_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto cfg = parse_opt_config(config_json);
    latorb::critical_radius(nu->body, cfg);
    auto samples = latorb::locus_sample(nu->body, tol, cfg);
    nlohmann::ordered_json j = critical_report(nu->body);
    j["tol"] = tol;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& lat : samples) arr.push_back(lat.to_json());
    j["locus_samples"] = arr;
    double diam = 0;
    for (size_t a = 0; a < samples.size(); ++a)
      for (size_t b = a + 1; b < samples.size(); ++b)
        diam = std::max(diam, latorb::aligned_distance(samples[a], samples[b]));
    j["cluster_diameter"] = diam;
    *report_out = dup_string(j.dump());
  });
}

latorb_status latorb_norm_conjugate(const latorb_norm* nu, const char* g_json,
                                    latorb_norm** out) {
  return guarded([&] {
    if (!nu || !g_json || !out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    latorb::GroupElement g =
        latorb::GroupElement::from_json(nlohmann::ordered_json::parse(g_json));
    *out = new latorb_norm{latorb::conjugate_norm(nu->body, g)};
  });
}

latorb_status latorb_norm_conjugate_to_target(latorb_norm* nu,
                                              const char* target_literal,
                                              const char* config_json,
                                              latorb_norm** out,
                                              char** report_out) {
  return guarded([&] {
    if (!nu || !target_literal || !out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto cfg = parse_opt_config(config_json);
    latorb::critical_radius(nu->body, cfg);
    latorb::SectionPoint sp = latorb::section_point_parse(target_literal);
    auto [target, pair] = latorb::reconstruct_lattice(sp);
    latorb::GroupElement g = latorb::conjugator_to_target(nu->body, target);
    latorb::NormBody conj = latorb::conjugate_norm(nu->body, g);
    *out = new latorb_norm{conj};
    if (report_out) {
      nlohmann::ordered_json j;
      j["schema"] = "lattice-orbits/1";
      j["config"] = run_config_echo();
      j["target"] = sp.to_json();
      j["g"] = g.to_json();
      j["norm"] = conj.to_json();
      j["r_hat"] = conj.critical().r_hat.to_string();
      j["error_bound"] = conj.critical().error_bound;
      *report_out = dup_string(j.dump());
    }
  });
}

void latorb_norm_free(latorb_norm* nu) { delete nu; }

latorb_status latorb_orbit_scan(const char* lattice_literal,
                                const latorb_norm* nu, double t_lo, double t_hi,
                                double step, const char* format, char** out) {
  return guarded([&] {
    if (!lattice_literal || !nu || !out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    latorb::PlanarLattice lat = latorb::lattice_parse(lattice_literal);
    unsigned prec = latorb::default_precision();
    auto res = latorb::orbit_min_scan(
        lat, nu->body, latorb::BigFloat::from_double(t_lo, prec),
        latorb::BigFloat::from_double(t_hi, prec),
        latorb::BigFloat::from_double(step, prec));
    nlohmann::ordered_json cfg = run_config_echo();
    cfg["lattice"] = lattice_literal;
    cfg["norm"] = nu->body.to_json();
    cfg["t_lo"] = t_lo;
    cfg["t_hi"] = t_hi;
    cfg["step"] = step;
    std::string fmt = format ? format : "json";
    *out = dup_string(fmt == "csv" ? res.to_csv(cfg) : res.to_json(cfg).dump());
  });
}

latorb_status latorb_orbit_chain(const char* lattice_literal, size_t depth,
                                 char** json_lines_out) {
  return guarded([&] {
    if (!lattice_literal || !json_lines_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    latorb::PlanarLattice lat = latorb::lattice_parse(lattice_literal);
    latorb::SectionChain chain = latorb::section_chain(lat, depth);
    *json_lines_out = dup_string(chain.to_json_lines());
  });
}

latorb_status latorb_orbit_precompact(const char* lattice_literal, size_t depth,
                                      char** json_out) {
  return guarded([&] {
    if (!lattice_literal || !json_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    latorb::PlanarLattice lat = latorb::lattice_parse(lattice_literal);
    latorb::PrecompactReport rep = latorb::precompact_test(lat, depth);
    nlohmann::ordered_json j = rep.to_json();
    j["schema"] = "lattice-orbits/1";
    j["config"] = run_config_echo();
    *json_out = dup_string(j.dump());
  });
}

latorb_status latorb_alpha_from_number(const latorb_number* x,
                                       latorb_alpha** out) {
  return guarded([&] {
    if (!x || !out) latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto* a = new latorb_alpha;
    a->exact = x->value;
    a->digits = latorb::CFExpansion::from_exact(x->value);
    *out = a;
  });
}

latorb_status latorb_construct_synthesize(const char* target_literal,
                                          const char* plan_json,
                                          latorb_alpha** out,
                                          char** report_out) {
  return guarded([&] {
    if (!target_literal || !out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    latorb::SectionPoint sp = latorb::section_point_parse(target_literal);
    latorb::SynthesisPlan plan;
    if (plan_json && *plan_json) {
      auto j = nlohmann::ordered_json::parse(plan_json);
      plan.L = j.value("L", plan.L);
      plan.blocks = j.value("blocks", plan.blocks);
      plan.filler = j.value("filler", plan.filler);
      if (j.contains("positions"))
        plan.positions = j.at("positions").get<std::vector<long>>();
    }
    latorb::SynthesizedAlpha sa = latorb::synthesize(sp, plan);
    auto* a = new latorb_alpha;
    a->digits = sa.digits();
    a->synthesized = std::move(sa);
    *out = a;
    if (report_out) {
      nlohmann::ordered_json j = a->synthesized->to_json();
      j["schema"] = "lattice-orbits/1";
      j["config"] = run_config_echo();
      *report_out = dup_string(j.dump());
    }
  });
}

latorb_status latorb_construct_verify(const latorb_alpha* alpha,
                                      const char* target_literal,
                                      size_t checkpoints, size_t tail_depth,
                                      char** report_out) {
  return guarded([&] {
    if (!alpha || !target_literal || !report_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    if (!alpha->synthesized)
      latorb::fail(ErrorCode::domain, "verify needs a synthesized alpha");
    latorb::SectionPoint sp = latorb::section_point_parse(target_literal);
    auto cps = latorb::verify_limit_point(*alpha->synthesized, sp, checkpoints,
                                          tail_depth);
    nlohmann::ordered_json j =
        latorb::verify_report(*alpha->synthesized, cps);
    j["schema"] = "lattice-orbits/1";
    j["config"] = run_config_echo();
    *report_out = dup_string(j.dump());
  });
}

latorb_status latorb_alpha_digits(const latorb_alpha* alpha, size_t n,
                                  char** json_out) {
  return guarded([&] {
    if (!alpha || !json_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : alpha->digits.prefix(n)) arr.push_back(d.get_str());
    nlohmann::ordered_json j;
    j["digits"] = arr;
    *json_out = dup_string(j.dump());
  });
}

void latorb_alpha_free(latorb_alpha* alpha) { delete alpha; }

latorb_status latorb_di_test(const latorb_alpha* alpha, latorb_norm* nu,
                             double t0, double t_max, double step,
                             char** verdict_out) {
  return guarded([&] {
    if (!alpha || !nu || !verdict_out)
      latorb::fail(ErrorCode::invalid_argument, "null argument");
    latorb::DiConfig cfg;
    cfg.t0 = t0;
    cfg.t_max = t_max;
    cfg.step = step;
    latorb::DiVerdict v;
    if (alpha->exact)
      v = latorb::di_test(*alpha->exact, nu->body, cfg);
    else
      v = latorb::di_test(alpha->digits, nu->body, cfg);
    *verdict_out = dup_string(v.to_json(cfg.to_json()).dump());
  });
}

latorb_status latorb_dim_bound(long L, long M, const char* positions,
                               long m_max, const char* format, char** out) {
  return guarded([&] {
    if (!out) latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto pos = parse_positions(positions);
    auto rep = latorb::dim_lower_bound(L, mpz_class(M), pos, m_max);
    nlohmann::ordered_json cfg = run_config_echo();
    cfg["L"] = L;
    cfg["M"] = M;
    cfg["m_max"] = m_max;
    cfg["positions"] = positions ? positions : "";
    std::string fmt = format ? format : "json";
    *out = dup_string(fmt == "csv" ? rep.to_csv(cfg) : rep.to_json(cfg).dump());
  });
}

latorb_status latorb_dim_audit(long L, const char* target_literal,
                               const char* positions, long m_max, char** out) {
  return guarded([&] {
    if (!out) latorb::fail(ErrorCode::invalid_argument, "null argument");
    auto pos = parse_positions(positions);
    std::optional<latorb::TargetDigits> td;
    if (target_literal && *target_literal) {
      latorb::SectionPoint sp = latorb::section_point_parse(target_literal);
      td = latorb::TargetDigits::from_target(sp);
    }
    auto audit = latorb::audit_family(L, td ? &*td : nullptr, pos, m_max);
    nlohmann::ordered_json cfg = run_config_echo();
    cfg["L"] = L;
    cfg["m_max"] = m_max;
    cfg["positions"] = positions ? positions : "";
    cfg["target"] = target_literal ? target_literal : "";
    *out = dup_string(audit.to_json(cfg).dump());
  });
}

}  // extern "C"
