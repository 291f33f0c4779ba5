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

/* The C API from plain C. */

#include <stdio.h>
#include <string.h>

#include "jagged_c.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static jg_scenario* load(const char* name) {
  char path[1024];
  jg_scenario* s = NULL;
  snprintf(path, sizeof path, "%s/%s.json", JAGGED_SCENARIO_DIR, name);
  if (jg_scenario_load(path, &s) != JG_OK) fprintf(stderr, "load %s: %s\n", name, jg_last_error());
  return s;
}

static size_t count(const char* haystack, const char* needle) {
  size_t n = 0;
  for (const char* p = strstr(haystack, needle); p; p = strstr(p + 1, needle)) ++n;
  return n;
}

int main(void) {
  jg_options opts;
  jg_result* r = NULL;
  jg_options_init(&opts);
  EXPECT(opts.torder == 6 && opts.max_bends == 8 && opts.max_length == 12);
  EXPECT(opts.denominator_bound == 997 && opts.seed == 0 && opts.cone_height == 8);

  EXPECT(jg_normalize(5, &r) == JG_OK);
  EXPECT(strcmp(jg_result_text(r), "-2, 5, -32, 286, -3038\n") == 0);
  jg_result_free(r);
  EXPECT(jg_normalize(0, &r) == JG_ERR_ARGUMENT);
  EXPECT(r == NULL);

  jg_scenario* b1 = load("b1");
  EXPECT(b1 != NULL);
  if (b1) {
    const char* factors[] = {"X", "Y"};
    EXPECT(jg_multiply(b1, factors, 2, &opts, &r) == JG_OK);
    EXPECT(strcmp(jg_result_text(r), "X*Y = t*Z^2 + t*W*Z\n") == 0);
    jg_result_free(r);

    EXPECT(jg_lift(b1, "X", "1:1/8,1/4", &opts, &r) == JG_OK);
    EXPECT(strstr(jg_result_text(r), "2 paths") != NULL);
    char traces[65536];
    snprintf(traces, sizeof traces, "%s", jg_result_json(r));
    jg_result_free(r);

    EXPECT(jg_render(b1, traces, NULL, &r) == JG_OK);
    EXPECT(count(jg_result_text(r), "<polyline") == 2);
    EXPECT(count(jg_result_text(r), "class=\"bend\"") == 1);
    jg_result_free(r);

    EXPECT(jg_render(b1, "{\"paths\":[{\"segments\":[{\"cell\":9,\"a\":[0,0],\"b\":[1,0]}]}]}", NULL, &r) ==
           JG_ERR_RENDER);
    EXPECT(jg_lift(b1, "X", "1:0,1/4", &opts, &r) == JG_ERR_GENERICITY);
    EXPECT(strstr(jg_last_error(), "try") != NULL);
    EXPECT(jg_mumford_check(b1, 1, 1, &opts, &r) == JG_ERR_UNSUPPORTED);
    EXPECT(jg_lift(b1, "Q", "1:1/8,1/4", &opts, &r) == JG_ERR_PARSE);
    jg_scenario_free(b1);
  }

  jg_scenario* b3 = load("b3");
  if (b3) {
    EXPECT(jg_consistency(b3, 1, "p", &opts, &r) == JG_CHECK_FAILED);
    EXPECT(r != NULL && strstr(jg_result_text(r), "INCONSISTENT") != NULL);
    jg_result_free(r);
    jg_scenario_free(b3);
  }

  jg_scenario* t3 = load("torus1d_3");
  if (t3) {
    int64_t levels[] = {0, 1, 3, 2};
    const char* points[] = {"0", "1/2", "1"};
    const char* same[] = {"0", "0", "0"};
    EXPECT(jg_tmt(t3, levels, points, 3, &opts, &r) == JG_OK);
    EXPECT(strstr(jg_result_text(r), "e_{0,3} e_{2,3}") != NULL);
    jg_result_free(r);
    EXPECT(jg_tmt(t3, levels, same, 3, &opts, &r) == JG_ERR_DEGENERATE);
    jg_scenario_free(t3);
  }

  EXPECT(jg_validate("{\"cells\": 3}", &r) == JG_ERR_PARSE || jg_result_status(r) == JG_CHECK_FAILED);
  jg_result_free(r);
  EXPECT(jg_scenario_parse("not json", &b1) == JG_ERR_PARSE);
  EXPECT(jg_scenario_load("/nonexistent.json", &b1) == JG_ERR_IO);
  EXPECT(jg_multiply(NULL, NULL, 0, NULL, &r) == JG_ERR_ARGUMENT);

  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("c api: all checks passed\n");
  return failures ? 1 : 0;
}
