/* Copyright 2026 The lattice-orbits authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the lattice-orbits core. All functions return a status
 * code; rich results come back as JSON or CSV strings allocated by the
 * library and released with latorb_string_free. Handles are opaque and
 * freed with their matching *_free function. On error, a thread-local
 * message is available via latorb_last_error().
 *
 * Literals used throughout:
 *   numbers:  "phi" | "sqrt2m1" | "rational:p/q" | "sqrtD:a:b:c" |
 *             "sqrtD:a:c" (b = 1) | "float:<decimal>"
 *   lattices: "zsquared" | "alpha:<number>" | "reconstruct:<x>,<y>,<eps>"
 *   targets:  "<x>,<y>[,<eps>]" (section point with surd coordinates)
 *   norms:    "sup" | "euclidean" | "hexagon" | "pnorm:<p>" | JSON object
 */

#ifndef LATORB_H
#define LATORB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum latorb_status {
  LATORB_OK = 0,
  LATORB_ERR_INVALID_ARGUMENT = 1,
  LATORB_ERR_DOMAIN = 2,
  LATORB_ERR_PRECISION = 3,
  LATORB_ERR_NO_CONVERGENCE = 4,
  LATORB_ERR_RESOURCE = 5,
  LATORB_ERR_INTERNAL = 6
} latorb_status;

const char* latorb_status_name(latorb_status s);
/* Message for the most recent failure on this thread; empty when none. */
const char* latorb_last_error(void);
void latorb_string_free(char* s);

unsigned latorb_default_precision(void);
latorb_status latorb_set_default_precision(unsigned bits);

/* ---- numbers ---- */
typedef struct latorb_number latorb_number;
latorb_status latorb_number_parse(const char* literal, latorb_number** out);
latorb_status latorb_number_to_json(const latorb_number* x, char** json_out);
void latorb_number_free(latorb_number* x);

/* ---- continued fractions ---- */
latorb_status latorb_cf_expand(const latorb_number* x, size_t n,
                               char** json_out);
latorb_status latorb_cf_convergents(const char* digits_csv, char** json_out);
latorb_status latorb_cf_cylinder(const char* index_csv, char** json_out);

/* ---- norms ---- */
typedef struct latorb_norm latorb_norm;
latorb_status latorb_norm_create(const char* spec, latorb_norm** out);
latorb_status latorb_norm_to_json(const latorb_norm* nu, char** json_out);
/* config_json: {"grid":48,"nm_iterations":200,...}; NULL for defaults. */
latorb_status latorb_norm_critical(latorb_norm* nu, const char* config_json,
                                   char** report_out);
latorb_status latorb_norm_locus(latorb_norm* nu, double tol,
                                const char* config_json, char** report_out);
latorb_status latorb_norm_conjugate(const latorb_norm* nu, const char* g_json,
                                    latorb_norm** out);
/* Conjugates nu so that its critical argmax maps onto the lattice
 * reconstructed from the target section point; computes the critical
 * radius first when needed. */
latorb_status latorb_norm_conjugate_to_target(latorb_norm* nu,
                                              const char* target_literal,
                                              const char* config_json,
                                              latorb_norm** out,
                                              char** report_out);
void latorb_norm_free(latorb_norm* nu);

/* ---- orbits ---- */
/* format: "json" or "csv". */
latorb_status latorb_orbit_scan(const char* lattice_literal,
                                const latorb_norm* nu, double t_lo,
                                double t_hi, double step, const char* format,
                                char** out);
latorb_status latorb_orbit_chain(const char* lattice_literal, size_t depth,
                                 char** json_lines_out);
latorb_status latorb_orbit_precompact(const char* lattice_literal,
                                      size_t depth, char** json_out);

/* ---- construction ---- */
typedef struct latorb_alpha latorb_alpha;
latorb_status latorb_alpha_from_number(const latorb_number* x,
                                       latorb_alpha** out);
/* plan_json: {"L":2,"blocks":6,"positions":[...],"filler":1}; NULL defaults. */
latorb_status latorb_construct_synthesize(const char* target_literal,
                                          const char* plan_json,
                                          latorb_alpha** out,
                                          char** report_out);
latorb_status latorb_construct_verify(const latorb_alpha* alpha,
                                      const char* target_literal,
                                      size_t checkpoints, size_t tail_depth,
                                      char** report_out);
latorb_status latorb_alpha_digits(const latorb_alpha* alpha, size_t n,
                                  char** json_out);
void latorb_alpha_free(latorb_alpha* alpha);

/* Dirichlet-improvability scan; requires the norm's critical radius. */
latorb_status latorb_di_test(const latorb_alpha* alpha, latorb_norm* nu,
                             double t0, double t_max, double step,
                             char** verdict_out);

/* ---- dimension bounds ---- */
/* positions: "cubic:<K>" or comma-separated even integers; format json|csv. */
latorb_status latorb_dim_bound(long L, long M, const char* positions,
                               long m_max, const char* format, char** out);
/* target_literal may be NULL (no blocked levels). */
latorb_status latorb_dim_audit(long L, const char* target_literal,
                               const char* positions, long m_max, char** out);

#ifdef __cplusplus
}
#endif

#endif /* LATORB_H */
