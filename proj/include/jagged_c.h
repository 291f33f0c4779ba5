/* Copyright 2026 The jagged Authors
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

#ifndef JAGGED_C_H
#define JAGGED_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define JG_API __declspec(dllexport)
#else
#define JG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status of every call. JG_CHECK_FAILED means the computation ran and its
 * check did not hold; the result is still returned. Everything above it is
 * an error and no result is produced. */
typedef enum jg_status {
  JG_OK = 0,
  JG_CHECK_FAILED = 1,
  JG_ERR_ARGUMENT = 2,
  JG_ERR_IO = 3,
  JG_ERR_PARSE = 4,
  JG_ERR_VALIDATION = 5,
  JG_ERR_GEOMETRY = 6,
  JG_ERR_GENERICITY = 7,
  JG_ERR_DEGENERATE = 8,
  JG_ERR_INCONSISTENT = 9,
  JG_ERR_UNSUPPORTED = 10,
  JG_ERR_RENDER = 11,
  JG_ERR_INTERNAL = 12
} jg_status;

typedef struct jg_options {
  int64_t torder;            /* t-order cutoff k, default 6 */
  int32_t max_bends;         /* default 8 */
  int32_t max_length;        /* wall-monomial length L_max, default 12 */
  int64_t denominator_bound; /* generic point sampler, default 997 */
  uint64_t seed;             /* default 0 */
  int64_t cone_height;       /* truncated cone height H, default 8 */
  int32_t check_stability;   /* rerun with max_bends + 2, L_max + 2 and warn on change */
} jg_options;

typedef struct jg_scenario jg_scenario;
typedef struct jg_result jg_result;

JG_API void jg_options_init(jg_options* opts);
JG_API const char* jg_version(void);
JG_API const char* jg_status_name(jg_status status);
/* Message of the last failing call on this thread. */
JG_API const char* jg_last_error(void);

/* Loading validates the scenario; an invalid one is JG_ERR_VALIDATION. */
JG_API jg_status jg_scenario_load(const char* path, jg_scenario** out);
JG_API jg_status jg_scenario_parse(const char* json_text, jg_scenario** out);
JG_API void jg_scenario_free(jg_scenario* s);
JG_API const char* jg_scenario_name(const jg_scenario* s);

/* Results carry human-readable text, a JSON document and warnings. */
JG_API void jg_result_free(jg_result* r);
JG_API jg_status jg_result_status(const jg_result* r);
JG_API const char* jg_result_text(const jg_result* r);
JG_API const char* jg_result_json(const jg_result* r);
JG_API const char* jg_result_warnings(const jg_result* r);

/* Points are written "LABEL", "cell:x,y" or "x,y" (first cell containing
 * it), with an optional level suffix "@l" for basis points. Coordinates are
 * rationals "p/q". */

/* Runs every structural check; failed checks give JG_CHECK_FAILED. */
JG_API jg_status jg_validate(const char* json_text, jg_result** out);

JG_API jg_status jg_lift(jg_scenario* s, const char* from, const char* to, const jg_options* opts,
                         jg_result** out);

/* Staged product of the factors from left to right. */
JG_API jg_status jg_multiply(jg_scenario* s, const char* const* factors, size_t count, const jg_options* opts,
                             jg_result** out);

JG_API jg_status jg_relations(jg_scenario* s, int32_t max_degree, const jg_options* opts, jg_result** out);

/* without_ray may be NULL. */
JG_API jg_status jg_consistency(jg_scenario* s, int64_t level, const char* without_ray, const jg_options* opts,
                                jg_result** out);

JG_API jg_status jg_normalize(int32_t order, jg_result** out);

/* Needs a scenario with a torus block. */
JG_API jg_status jg_mumford_check(jg_scenario* s, int64_t max_level, int32_t samples_per_cell,
                                  const jg_options* opts, jg_result** out);

/* Tropical Morse trees on a one-dimensional torus: count + 1 levels and
 * count points p_{i,i+1} given as rationals. */
JG_API jg_status jg_tmt(jg_scenario* s, const int64_t* levels, const char* const* points, size_t count,
                        const jg_options* opts, jg_result** out);

/* mu_2 of two basis points from balanced pairs of jagged paths. */
JG_API jg_status jg_mu2(jg_scenario* s, const char* first, const char* second, const jg_options* opts,
                        jg_result** out);

/* traces_json and plan_json may be NULL. The plan is
 * {"layout": "auto"|"native"|"row", "cells": [...], "scale": n, "labels": b}.
 * The SVG document is the result text. */
JG_API jg_status jg_render(jg_scenario* s, const char* traces_json, const char* plan_json, jg_result** out);

#ifdef __cplusplus
}
#endif

#endif /* JAGGED_C_H */
