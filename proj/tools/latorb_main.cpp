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

// Command-line front end; talks to the core exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latorb/latorb.h"

namespace {

struct StringOut {
  char* s = nullptr;
  ~StringOut() { latorb_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

int fail_with(latorb_status st) {
  nlohmann::ordered_json err;
  err["schema"] = "lattice-orbits/1";
  err["error"] = {{"status", latorb_status_name(st)},
                  {"message", latorb_last_error()}};
  std::cout << err.dump(2) << std::endl;
  return static_cast<int>(st);
}

// Echoes argv into JSON reports; prepends a comment line to CSV.
void emit(const std::string& payload, const std::string& format,
          const std::string& out_path, const std::vector<std::string>& argv) {
  std::string final_payload = payload;
  if (format == "csv") {
    std::ostringstream os;
    os << "# argv:";
    for (const auto& a : argv) os << " " << a;
    os << "\n" << payload;
    final_payload = os.str();
  } else if (!payload.empty() && (payload.front() == '{' || payload.front() == '[')) {
    auto j = nlohmann::ordered_json::parse(payload);
    if (j.is_object()) {
      nlohmann::ordered_json wrapped;
      for (auto& [k, v] : j.items()) {
        wrapped[k] = v;
        if (k == "schema") wrapped["argv"] = argv;
      }
      if (!wrapped.contains("argv")) wrapped["argv"] = argv;
      final_payload = wrapped.dump(2);
    }
  }
  if (out_path.empty()) {
    std::cout << final_payload << std::endl;
  } else {
    std::ofstream f(out_path);
    f << final_payload;
    std::cerr << "wrote " << out_path << std::endl;
  }
}

bool parse_range(const std::string& s, double& lo, double& hi, double& step) {
  std::stringstream ss(s);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':')) return false;
  std::getline(ss, c, ':');
  lo = std::stod(a);
  hi = std::stod(b);
  step = c.empty() ? 1e-3 : std::stod(c);
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

using NormHandle = std::unique_ptr<latorb_norm, decltype(&latorb_norm_free)>;
using AlphaHandle = std::unique_ptr<latorb_alpha, decltype(&latorb_alpha_free)>;
using NumberHandle =
    std::unique_ptr<latorb_number, decltype(&latorb_number_free)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice-orbits: planar lattices under the diagonal flow"};
  app.require_subcommand(1);
  app.fallthrough();
  std::vector<std::string> argv_echo(argv, argv + argc);

  unsigned precision = 0;
  std::string format = "json";
  std::string out_path;
  app.add_option("--precision", precision, "working precision in bits");
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write output to this file");

  // ---- cf ----
  auto* cf = app.add_subcommand("cf", "continued fractions");
  cf->require_subcommand(1);
  std::string cf_rational, cf_surd, cf_alpha, cf_digits, cf_index;
  size_t cf_n = 10;
  auto* cf_expand = cf->add_subcommand("expand", "digits of an exact number");
  cf_expand->add_option("--rational", cf_rational, "p/q in (0,1)");
  cf_expand->add_option("--surd", cf_surd, "sqrtD:a[:b]:c or alias");
  cf_expand->add_option("--alpha", cf_alpha, "any number literal");
  cf_expand->add_option("--n", cf_n, "digit count");
  auto* cf_conv = cf->add_subcommand("convergents", "p_i/q_i of a digit list");
  cf_conv->add_option("--digits", cf_digits, "comma-separated digits")
      ->required();
  auto* cf_cyl = cf->add_subcommand("cylinder", "cylinder interval of an index");
  cf_cyl->add_option("--index", cf_index, "comma-separated multi-index")
      ->required();

  // ---- orbit ----
  auto* orbit = app.add_subcommand("orbit", "diagonal-flow orbits");
  orbit->require_subcommand(1);
  std::string orbit_alpha, orbit_lattice, orbit_norm = "sup", orbit_range = "0:20:0.001";
  size_t orbit_depth = 20;
  auto* orbit_scan = orbit->add_subcommand("scan", "lambda_1 along the orbit");
  orbit_scan->add_option("--alpha", orbit_alpha, "number literal for Lambda_alpha");
  orbit_scan->add_option("--lattice", orbit_lattice, "lattice literal");
  orbit_scan->add_option("--norm", orbit_norm, "norm spec");
  orbit_scan->add_option("--t", orbit_range, "t_lo:t_hi[:step]");
  auto* orbit_chain = orbit->add_subcommand("chain", "section-point chain");
  orbit_chain->add_option("--lattice", orbit_lattice, "lattice literal")
      ->required();
  orbit_chain->add_option("--depth", orbit_depth, "chain length");
  auto* orbit_pre = orbit->add_subcommand("precompact", "precompactness test");
  orbit_pre->add_option("--lattice", orbit_lattice, "lattice literal")
      ->required();
  orbit_pre->add_option("--depth", orbit_depth, "digit depth");

  // ---- norm ----
  auto* norm = app.add_subcommand("norm", "critical radii and improvability");
  norm->require_subcommand(1);
  std::string norm_kind = "sup", norm_file, norm_alpha, norm_target;
  std::string opt_config;
  double norm_tol = 1e-3, di_t0 = 5.0, di_tmax = 40.0, di_step = 1e-3;
  auto add_norm_opts = [&](CLI::App* cmd) {
    cmd->add_option("--kind", norm_kind, "sup|euclidean|hexagon|pnorm:p|JSON");
    cmd->add_option("--norm-file", norm_file, "norm JSON file");
    cmd->add_option("--opt-config", opt_config, "optimizer config JSON");
  };
  auto* norm_critical = norm->add_subcommand("critical", "critical radius");
  add_norm_opts(norm_critical);
  auto* norm_locus = norm->add_subcommand("locus", "critical locus samples");
  add_norm_opts(norm_locus);
  norm_locus->add_option("--tol", norm_tol, "locus tolerance");
  auto* norm_di = norm->add_subcommand("di", "Dirichlet improvability scan");
  add_norm_opts(norm_di);
  norm_di->add_option("--alpha", norm_alpha, "number literal")->required();
  norm_di->add_option("--t0", di_t0, "scan start");
  norm_di->add_option("--tmax", di_tmax, "scan end");
  norm_di->add_option("--step", di_step, "scan step");
  auto* norm_conj = norm->add_subcommand(
      "conjugate", "conjugate a norm so its locus hits a target lattice");
  add_norm_opts(norm_conj);
  norm_conj->add_option("--target", norm_target, "section point x,y[,eps]")
      ->required();

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "badly approximable synthesis");
  construct->require_subcommand(1);
  std::string con_target = "phi,phi,+1", con_positions;
  long con_L = 2;
  size_t con_K = 6, con_checkpoints = 6, con_tail = 60, con_prefix = 40;
  auto add_con_opts = [&](CLI::App* cmd) {
    cmd->add_option("--target", con_target, "section point with surd coords");
    cmd->add_option("--L", con_L, "digit cap");
    cmd->add_option("--K", con_K, "number of blocks");
    cmd->add_option("--positions", con_positions, "cubic[:K] or explicit list");
  };
  auto* con_syn = construct->add_subcommand("synthesize", "build the digit stream");
  add_con_opts(con_syn);
  con_syn->add_option("--prefix", con_prefix, "digits to print");
  auto* con_ver = construct->add_subcommand("verify", "limit-point distances");
  add_con_opts(con_ver);
  con_ver->add_option("--checkpoints", con_checkpoints, "checkpoints to audit");
  con_ver->add_option("--tail-depth", con_tail, "tail truncation depth");

  // ---- dim ----
  auto* dim = app.add_subcommand("dim", "Hausdorff dimension machinery");
  dim->require_subcommand(1);
  long dim_L = 10, dim_M = 1, dim_mmax = 200;
  std::string dim_positions, dim_target;
  auto* dim_bound = dim->add_subcommand("bound", "dimension lower-bound curve");
  dim_bound->add_option("--L", dim_L, "digit cap")->required();
  dim_bound->add_option("--M", dim_M, "block digit bound");
  dim_bound->add_option("--positions", dim_positions, "cubic[:K] or list");
  dim_bound->add_option("--mmax", dim_mmax, "curve horizon");
  auto* dim_audit = dim->add_subcommand("audit", "exact nested-family audit");
  dim_audit->add_option("--L", dim_L, "digit cap")->required();
  dim_audit->add_option("--target", dim_target, "section point for block digits");
  dim_audit->add_option("--positions", dim_positions, "cubic[:K] or list");
  dim_audit->add_option("--mmax", dim_mmax, "levels to materialize");

  CLI11_PARSE(app, argc, argv);

  if (precision) {
    latorb_status st = latorb_set_default_precision(precision);
    if (st != LATORB_OK) return fail_with(st);
  }

  auto make_norm = [&]() -> NormHandle {
    std::string spec = norm_file.empty() ? norm_kind : read_file(norm_file);
    latorb_norm* n = nullptr;
    latorb_status st = latorb_norm_create(spec.c_str(), &n);
    if (st != LATORB_OK) {
      std::exit(fail_with(st));
    }
    return NormHandle(n, &latorb_norm_free);
  };
  auto plan_json = [&]() {
    nlohmann::ordered_json j;
    j["L"] = con_L;
    j["blocks"] = con_K;
    if (!con_positions.empty() && con_positions.rfind("cubic", 0) != 0) {
      std::vector<long> ps;
      std::stringstream ss(con_positions);
      std::string item;
      while (std::getline(ss, item, ',')) ps.push_back(std::stol(item));
      j["positions"] = ps;
    }
    return j.dump();
  };

  latorb_status st = LATORB_OK;
  StringOut out;

  if (cf_expand->parsed()) {
    std::string lit = !cf_alpha.empty() ? cf_alpha
                      : !cf_surd.empty() ? cf_surd
                                         : "rational:" + cf_rational;
    latorb_number* num = nullptr;
    st = latorb_number_parse(lit.c_str(), &num);
    if (st != LATORB_OK) return fail_with(st);
    NumberHandle guard(num, &latorb_number_free);
    st = latorb_cf_expand(num, cf_n, &out.s);
  } else if (cf_conv->parsed()) {
    st = latorb_cf_convergents(cf_digits.c_str(), &out.s);
  } else if (cf_cyl->parsed()) {
    st = latorb_cf_cylinder(cf_index.c_str(), &out.s);
  } else if (orbit_scan->parsed()) {
    double lo, hi, step;
    if (!parse_range(orbit_range, lo, hi, step))
      throw CLI::ValidationError("--t expects lo:hi[:step]");
    std::string lat = !orbit_lattice.empty() ? orbit_lattice
                                             : "alpha:" + orbit_alpha;
    latorb_norm* n = nullptr;
    st = latorb_norm_create(orbit_norm.c_str(), &n);
    if (st != LATORB_OK) return fail_with(st);
    NormHandle guard(n, &latorb_norm_free);
    st = latorb_orbit_scan(lat.c_str(), n, lo, hi, step, format.c_str(), &out.s);
  } else if (orbit_chain->parsed()) {
    st = latorb_orbit_chain(orbit_lattice.c_str(), orbit_depth, &out.s);
    if (st == LATORB_OK) {
      // JSON-lines output: emit raw.
      if (out_path.empty())
        std::cout << out.str();
      else {
        std::ofstream f(out_path);
        f << out.str();
      }
      return 0;
    }
  } else if (orbit_pre->parsed()) {
    st = latorb_orbit_precompact(orbit_lattice.c_str(), orbit_depth, &out.s);
  } else if (norm_critical->parsed()) {
    NormHandle n = make_norm();
    st = latorb_norm_critical(n.get(), opt_config.c_str(), &out.s);
  } else if (norm_locus->parsed()) {
    NormHandle n = make_norm();
    st = latorb_norm_locus(n.get(), norm_tol, opt_config.c_str(), &out.s);
  } else if (norm_di->parsed()) {
    NormHandle n = make_norm();
    StringOut crit;
    st = latorb_norm_critical(n.get(), opt_config.c_str(), &crit.s);
    if (st != LATORB_OK) return fail_with(st);
    latorb_number* num = nullptr;
    st = latorb_number_parse(norm_alpha.c_str(), &num);
    if (st != LATORB_OK) return fail_with(st);
    NumberHandle nguard(num, &latorb_number_free);
    latorb_alpha* a = nullptr;
    st = latorb_alpha_from_number(num, &a);
    if (st != LATORB_OK) return fail_with(st);
    AlphaHandle aguard(a, &latorb_alpha_free);
    st = latorb_di_test(a, n.get(), di_t0, di_tmax, di_step, &out.s);
  } else if (norm_conj->parsed()) {
    NormHandle n = make_norm();
    latorb_norm* conj = nullptr;
    st = latorb_norm_conjugate_to_target(n.get(), norm_target.c_str(),
                                         opt_config.c_str(), &conj, &out.s);
    if (conj) latorb_norm_free(conj);
  } else if (con_syn->parsed()) {
    latorb_alpha* a = nullptr;
    st = latorb_construct_synthesize(con_target.c_str(), plan_json().c_str(),
                                     &a, &out.s);
    if (a) latorb_alpha_free(a);
  } else if (con_ver->parsed()) {
    latorb_alpha* a = nullptr;
    StringOut syn;
    st = latorb_construct_synthesize(con_target.c_str(), plan_json().c_str(),
                                     &a, &syn.s);
    if (st != LATORB_OK) return fail_with(st);
    AlphaHandle aguard(a, &latorb_alpha_free);
    st = latorb_construct_verify(a, con_target.c_str(), con_checkpoints,
                                 con_tail, &out.s);
  } else if (dim_bound->parsed()) {
    st = latorb_dim_bound(dim_L, dim_M, dim_positions.c_str(), dim_mmax,
                          format.c_str(), &out.s);
  } else if (dim_audit->parsed()) {
    st = latorb_dim_audit(dim_L,
                          dim_target.empty() ? nullptr : dim_target.c_str(),
                          dim_positions.c_str(), dim_mmax, &out.s);
  }

  if (st != LATORB_OK) return fail_with(st);
  emit(out.str(), format, out_path, argv_echo);
  return 0;
}
