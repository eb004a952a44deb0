// Copyright 2026 The isolab Authors
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
#ifndef ISOLAB_ISOLAB_H
#define ISOLAB_ISOLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(ISOLAB_BUILDING_LIBRARY)
#define ISOLAB_API __attribute__((visibility("default")))
#else
#define ISOLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct isolab_space isolab_space;
typedef struct isolab_isometry isolab_isometry;
typedef struct isolab_report isolab_report;
typedef struct isolab_sweep isolab_sweep;

typedef enum isolab_status {
  ISOLAB_OK = 0,
  ISOLAB_INVALID_ARGUMENT = 1,
  ISOLAB_DIMENSION_MISMATCH = 2,
  ISOLAB_REFUSED = 3,
  ISOLAB_NOT_CLOSED = 4,
  ISOLAB_VALIDATION = 5,
  ISOLAB_PARSE = 6,
  ISOLAB_NUMERICAL = 7,
  ISOLAB_LIMIT_EXCEEDED = 8,
  ISOLAB_INTERNAL = 9
} isolab_status;

/* Unset fields (has_* = 0, task = NULL) fall back to the scenario. */
typedef struct isolab_run_options {
  int has_seed;
  uint64_t seed;
  int has_tol;
  double tol;
  int has_budget;
  size_t budget;
  int has_p;
  double p;
  const char* task;
} isolab_run_options;

ISOLAB_API const char* isolab_version(void);
ISOLAB_API const char* isolab_status_string(isolab_status status);
/* Message of the last failed call on this thread; "" if none. */
ISOLAB_API const char* isolab_last_error(void);

/* weights may be NULL for counting measure. */
ISOLAB_API isolab_status isolab_space_create(size_t dim, double p, const double* weights,
                                             isolab_space** out);
ISOLAB_API void isolab_space_free(isolab_space* space);
ISOLAB_API size_t isolab_space_dim(const isolab_space* space);
ISOLAB_API double isolab_space_p(const isolab_space* space);
ISOLAB_API isolab_status isolab_space_norm(const isolab_space* space, const double* v, double* out);
ISOLAB_API isolab_status isolab_space_duality_map(const isolab_space* space, const double* v,
                                                  double* out);
ISOLAB_API isolab_status isolab_space_mazur_map(const isolab_space* space, const double* v,
                                                double q, double* out);

/* (Uv)_i = signs[i] (mu_sigma(i) / nu_i)^(1/p) v_sigma(i). */
ISOLAB_API isolab_status isolab_isometry_create(const size_t* sigma, const int* signs,
                                                const isolab_space* source,
                                                const isolab_space* target,
                                                isolab_isometry** out);
ISOLAB_API void isolab_isometry_free(isolab_isometry* u);
ISOLAB_API size_t isolab_isometry_dim(const isolab_isometry* u);
ISOLAB_API isolab_status isolab_isometry_apply(const isolab_isometry* u, const double* v,
                                               double* out);
/* u after v. */
ISOLAB_API isolab_status isolab_isometry_compose(const isolab_isometry* u,
                                                 const isolab_isometry* v,
                                                 isolab_isometry** out);
ISOLAB_API isolab_status isolab_isometry_inverse(const isolab_isometry* u, isolab_isometry** out);
ISOLAB_API isolab_status isolab_isometry_mazur_conjugate(const isolab_isometry* u,
                                                         isolab_isometry** out);
ISOLAB_API isolab_status isolab_isometry_matrix(const isolab_isometry* u, double* out_row_major);

/* Scenario problems are reported inside the report, not as a status. */
ISOLAB_API isolab_status isolab_run(const char* scenario_text, const isolab_run_options* options,
                                    isolab_report** out);
ISOLAB_API isolab_status isolab_run_file(const char* path, const isolab_run_options* options,
                                         isolab_report** out);
ISOLAB_API void isolab_report_free(isolab_report* report);
/* Returned strings live as long as the report. */
ISOLAB_API const char* isolab_report_json(const isolab_report* report);
ISOLAB_API const char* isolab_report_csv(const isolab_report* report);
ISOLAB_API const char* isolab_report_trace_csv(const isolab_report* report);
ISOLAB_API const char* isolab_report_status(const isolab_report* report);
ISOLAB_API const char* isolab_report_message(const isolab_report* report);
ISOLAB_API int isolab_report_exit_code(const isolab_report* report);

ISOLAB_API isolab_status isolab_sweep_run(const char* scenario_text, const double* ps, size_t count,
                                          const isolab_run_options* options, isolab_sweep** out);
ISOLAB_API void isolab_sweep_free(isolab_sweep* sweep);
ISOLAB_API size_t isolab_sweep_size(const isolab_sweep* sweep);
ISOLAB_API const char* isolab_sweep_csv(const isolab_sweep* sweep);
ISOLAB_API const isolab_report* isolab_sweep_report(const isolab_sweep* sweep, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* ISOLAB_ISOLAB_H */
