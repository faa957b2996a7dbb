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

// Exercises the shared-library surface only: latorb.h, no core headers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "latorb/latorb.h"

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { latorb_string_free(s); }
  nlohmann::json json() const { return nlohmann::json::parse(s); }
};

}  // namespace

TEST_CASE("status names and error reporting") {
  CHECK(std::string(latorb_status_name(LATORB_OK)) == "ok");
  CHECK(std::string(latorb_status_name(LATORB_ERR_DOMAIN)) == "domain");
  latorb_number* n = nullptr;
  latorb_status st = latorb_number_parse("rational:1/0", &n);
  CHECK(st == LATORB_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(latorb_last_error()) > 0);
  st = latorb_number_parse(nullptr, &n);
  CHECK(st == LATORB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("number parse and JSON") {
  latorb_number* n = nullptr;
  REQUIRE(latorb_number_parse("phi", &n) == LATORB_OK);
  Str j;
  REQUIRE(latorb_number_to_json(n, &j.s) == LATORB_OK);
  auto parsed = j.json();
  CHECK(parsed["type"] == "surd");
  CHECK(parsed["d"] == "5");
  latorb_number_free(n);
}

TEST_CASE("cf expand, convergents, cylinder") {
  latorb_number* n = nullptr;
  REQUIRE(latorb_number_parse("phi", &n) == LATORB_OK);
  Str out;
  REQUIRE(latorb_cf_expand(n, 10, &out.s) == LATORB_OK);
  auto j = out.json();
  CHECK(j["digits"].size() == 10);
  for (const auto& d : j["digits"]) CHECK(d == "1");
  CHECK(j["terminated"] == false);
  latorb_number_free(n);

  latorb_number* r = nullptr;
  REQUIRE(latorb_number_parse("rational:1/3", &r) == LATORB_OK);
  Str out2;
  REQUIRE(latorb_cf_expand(r, 5, &out2.s) == LATORB_OK);
  auto j2 = out2.json();
  CHECK(j2["digits"].size() == 1);
  CHECK(j2["digits"][0] == "3");
  CHECK(j2["terminated"] == true);
  latorb_number_free(r);

  Str conv;
  REQUIRE(latorb_cf_convergents("1,1,1,1,1", &conv.s) == LATORB_OK);
  auto jc = conv.json();
  CHECK(jc["convergents"].size() == 5);
  CHECK(jc["convergents"][4]["p"] == "5");
  CHECK(jc["convergents"][4]["q"] == "8");

  Str cyl;
  REQUIRE(latorb_cf_cylinder("1,2", &cyl.s) == LATORB_OK);
  auto jy = cyl.json();
  CHECK(jy["lo"] == "2/3");
  CHECK(jy["hi"] == "3/4");
  CHECK(jy["lo_closed"] == true);
  CHECK(jy["hi_closed"] == false);
  CHECK(jy["sigma"] == "1/3");

  Str bad;
  CHECK(latorb_cf_cylinder("", &bad.s) == LATORB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("norm lifecycle and critical radius") {
  latorb_norm* nu = nullptr;
  REQUIRE(latorb_norm_create("sup", &nu) == LATORB_OK);
  Str rep;
  const char* cfg = "{\"grid\":12,\"nm_iterations\":60,\"nm_restarts\":2}";
  REQUIRE(latorb_norm_critical(nu, cfg, &rep.s) == LATORB_OK);
  auto j = rep.json();
  double r_hat = std::stod(j["r_hat"].get<std::string>());
  CHECK(std::fabs(r_hat - 1.0) < 1e-3);
  CHECK(j["schema"] == "lattice-orbits/1");
  CHECK(j["config"]["grid"] == 12);
  latorb_norm_free(nu);

  latorb_norm* bad = nullptr;
  CHECK(latorb_norm_create("frobnorm", &bad) == LATORB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("orbit scan, chain and precompact through the C surface") {
  latorb_norm* nu = nullptr;
  REQUIRE(latorb_norm_create("sup", &nu) == LATORB_OK);
  Str csv;
  REQUIRE(latorb_orbit_scan("alpha:rational:2/5", nu, 0, 3, 0.05, "csv",
                            &csv.s) == LATORB_OK);
  std::string text = csv.s;
  CHECK(text.find("t,lambda1,i,j") != std::string::npos);
  latorb_norm_free(nu);

  Str chain;
  REQUIRE(latorb_orbit_chain("reconstruct:phi,phi,+1", 5, &chain.s) == LATORB_OK);
  CHECK(std::string(chain.s).find("\"n\":5") != std::string::npos);

  Str pre;
  REQUIRE(latorb_orbit_precompact("reconstruct:sqrt2m1,sqrt2m1,+1", 50, &pre.s) ==
          LATORB_OK);
  auto j = pre.json();
  CHECK(j["verdict"] == "certified");
  CHECK(j["max_digit_x"] == "2");

  Str div;
  REQUIRE(latorb_orbit_precompact("alpha:rational:2/5", 20, &div.s) == LATORB_OK);
  CHECK(div.json()["verdict"] == "divergent_rational");
}

TEST_CASE("synthesize and verify through the C surface") {
  latorb_alpha* a = nullptr;
  Str rep;
  REQUIRE(latorb_construct_synthesize("phi,phi,+1", "{\"L\":2,\"blocks\":4}",
                                      &a, &rep.s) == LATORB_OK);
  auto j = rep.json();
  CHECK(j["alpha_digits_prefix"][0] == "2");
  CHECK(j["alpha_digits_prefix"][1] == "1");

  Str ver;
  REQUIRE(latorb_construct_verify(a, "phi,phi,+1", 4, 40, &ver.s) == LATORB_OK);
  auto jv = ver.json();
  REQUIRE(jv["checkpoints"].size() == 4);
  double final_d = jv["checkpoints"][3]["distance"].get<double>();
  CHECK(final_d < 1e-2);

  Str digs;
  REQUIRE(latorb_alpha_digits(a, 6, &digs.s) == LATORB_OK);
  CHECK(digs.json()["digits"].size() == 6);
  latorb_alpha_free(a);
}

TEST_CASE("di test through the C surface") {
  latorb_norm* nu = nullptr;
  REQUIRE(latorb_norm_create("sup", &nu) == LATORB_OK);
  Str crit;
  REQUIRE(latorb_norm_critical(nu, "{\"grid\":12,\"nm_iterations\":60}",
                               &crit.s) == LATORB_OK);
  latorb_number* n = nullptr;
  REQUIRE(latorb_number_parse("rational:2/5", &n) == LATORB_OK);
  latorb_alpha* a = nullptr;
  REQUIRE(latorb_alpha_from_number(n, &a) == LATORB_OK);
  Str verdict;
  REQUIRE(latorb_di_test(a, nu, 5, 25, 0.01, &verdict.s) == LATORB_OK);
  auto j = verdict.json();
  CHECK(j["verdict"] == "improvable (heuristic)");
  CHECK(j["sup_tail"].get<double>() < 0.1);
  latorb_alpha_free(a);
  latorb_number_free(n);
  latorb_norm_free(nu);
}

TEST_CASE("dimension machinery through the C surface") {
  Str bound;
  REQUIRE(latorb_dim_bound(10, 1, "cubic:3", 200, "json", &bound.s) == LATORB_OK);
  auto j = bound.json();
  CHECK(std::fabs(j["asymptotic_bound"].get<double>() - 0.736966) < 1e-6);

  Str csv;
  REQUIRE(latorb_dim_bound(10, 1, "", 30, "csv", &csv.s) == LATORB_OK);
  CHECK(std::string(csv.s).find("m,free,forced") != std::string::npos);

  Str audit;
  REQUIRE(latorb_dim_audit(3, nullptr, "", 5, &audit.s) == LATORB_OK);
  auto ja = audit.json();
  CHECK(ja["densities_pass"] == true);
  CHECK(ja["diam_pass"] == true);

  Str blocked;
  REQUIRE(latorb_dim_audit(2, "phi,phi,+1", "2,16,54", 20, &blocked.s) ==
          LATORB_OK);
  CHECK(blocked.json()["densities_pass"] == true);
}

TEST_CASE("precision control through the C surface") {
  unsigned before = latorb_default_precision();
  CHECK(latorb_set_default_precision(128) == LATORB_OK);
  CHECK(latorb_default_precision() == 128);
  CHECK(latorb_set_default_precision(before) == LATORB_OK);
  CHECK(latorb_set_default_precision(1) == LATORB_ERR_INVALID_ARGUMENT);
}
