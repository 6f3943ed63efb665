// Copyright 2026 The closedfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLOSEDFIT_CLOSEDFIT_H_
#define CLOSEDFIT_CLOSEDFIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CLOSEDFIT_BUILDING_SHARED)
#define CF_API __declspec(dllexport)
#else
#define CF_API __declspec(dllimport)
#endif
#else
#define CF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure the message is available
 * from cf_last_error() on the calling thread until its next failing call. */
typedef enum cf_status {
  CF_OK = 0,
  CF_INVALID_ARGUMENT = 1,
  CF_DOMAIN = 2,
  CF_DEGENERATE = 3,
  CF_OUT_OF_DOMAIN = 4,
  CF_NON_FINITE = 5,
  CF_NO_CONVERGENCE = 6,
  CF_ESTIMATION_FAILED = 7,
  CF_IO = 8,
  CF_PARSE = 9,
  CF_INTERNAL = 10
} cf_status;

CF_API const char* cf_status_name(cf_status status);
CF_API const char* cf_last_error(void);
CF_API const char* cf_version(void);

/* ---- samples ----------------------------------------------------------- */

typedef struct cf_sample cf_sample;

/* positive == 0: values must lie in (0, 1); otherwise in (0, inf). */
CF_API cf_status cf_sample_create(const double* values, size_t n, int positive,
                                  cf_sample** out);
/* column may be NULL; see the column rule in the README. */
CF_API cf_status cf_sample_load_csv(const char* path, const char* column,
                                    int positive, cf_sample** out);
CF_API void cf_sample_destroy(cf_sample* sample);
CF_API size_t cf_sample_size(const cf_sample* sample);
/* Copies min(capacity, size) values; returns the number copied. */
CF_API size_t cf_sample_values(const cf_sample* sample, double* out,
                               size_t capacity);
/* Column name for CSV-loaded samples, "" otherwise. */
CF_API const char* cf_sample_column(const cf_sample* sample);

/* ---- (r, s) grids ------------------------------------------------------ */

typedef struct cf_grid cf_grid;

CF_API cf_status cf_grid_create(const double* r_values, size_t nr,
                                const double* s_values, size_t ns,
                                cf_grid** out);
CF_API cf_status cf_grid_uniform(double rmin, double rmax, double rstep,
                                 double smin, double smax, double sstep,
                                 cf_grid** out);
CF_API cf_status cf_grid_default(cf_grid** out);
CF_API void cf_grid_destroy(cf_grid* grid);
CF_API size_t cf_grid_size(const cf_grid* grid);

/* ---- beta fits --------------------------------------------------------- */

typedef enum cf_method {
  CF_METHOD_ML = 0,
  CF_METHOD_CHEN_XIAO = 1,
  CF_METHOD_TAMAE = 2,
  CF_METHOD_PROPOSED = 3
} cf_method;

#define CF_METHOD_COUNT 4

/* "ml", "chen-xiao", "tamae", "proposed" */
CF_API const char* cf_method_key(cf_method method);
/* "ML", "Chen–Xiao", "Tamae et al.", "Proposed" (UTF-8) */
CF_API const char* cf_method_label(cf_method method);
CF_API cf_status cf_method_parse(const char* key, cf_method* out);

typedef struct cf_fit_result {
  double alpha;
  double beta;
  double loglik;
  double aic;
  double bic;
  int has_rs; /* nonzero for rs and profile fits */
  double r;
  double s;
  int iterations; /* ML Newton iterations, -1 otherwise */
  size_t skipped; /* profile grid points rejected */
} cf_fit_result;

/* grid may be NULL (default grid); only CF_METHOD_PROPOSED uses it. */
CF_API cf_status cf_fit_beta(const cf_sample* sample, cf_method method,
                             const cf_grid* grid, cf_fit_result* out);
/* derived == 0 selects the published E kernel. */
CF_API cf_status cf_fit_rs(const cf_sample* sample, double r, double s,
                           int derived, cf_fit_result* out);

typedef struct cf_asymptotic_result {
  double alpha;
  double beta;
  double covariance[2][2];
  double se_alpha;
  double se_beta;
  double alpha_lower;
  double alpha_upper;
  double beta_lower;
  double beta_upper;
  double level;
} cf_asymptotic_result;

/* Delta-method standard errors for the closed forms (the proposed fit uses
 * the (r, s) stored in `fit`), inverse Fisher information for ML. */
CF_API cf_status cf_asymptotics(const cf_sample* sample, cf_method method,
                                const cf_fit_result* fit, double level,
                                cf_asymptotic_result* out);

/* ---- weighted family --------------------------------------------------- */

typedef struct cf_weighted_result {
  double mu;
  double sigma;
  int kronecker;
  double loglik;
  double aic;
  double bic;
} cf_weighted_result;

/* Comma-separated generator names. */
CF_API const char* cf_generator_names(void);
/* kronecker < 0 uses the generator's own branch. */
CF_API cf_status cf_fit_weighted(const cf_sample* sample, const char* generator,
                                 int kronecker, cf_weighted_result* out);
CF_API cf_status cf_fit_weighted_exp(const cf_sample* sample,
                                     const char* generator, int kronecker,
                                     double r, cf_weighted_result* out);

/* ---- Monte Carlo ------------------------------------------------------- */

typedef struct cf_scenario {
  double alpha;
  double beta;
  size_t n;
  size_t replications;
  uint64_t seed;
} cf_scenario;

typedef struct cf_param_metrics {
  double mare;
  double rmse;
  double se;
} cf_param_metrics;

typedef struct cf_metrics_row {
  cf_method method;
  cf_param_metrics alpha;
  cf_param_metrics beta;
  size_t successes;
  size_t failures;
} cf_metrics_row;

/* Writes `count` rows to `out`. threads == 0 uses every core. */
CF_API cf_status cf_run_scenario(const cf_scenario* scenario,
                                 const cf_method* methods, size_t count,
                                 const cf_grid* grid, unsigned threads,
                                 cf_metrics_row* out);

typedef struct cf_frequency_table cf_frequency_table;

typedef struct cf_frequency_summary {
  double modal_r;
  double modal_s;
  double modal_share;
  size_t successes;
  size_t failures;
} cf_frequency_summary;

CF_API cf_status cf_profile_frequencies(const cf_scenario* scenario,
                                        const cf_grid* grid, unsigned threads,
                                        cf_frequency_table** out);
CF_API void cf_frequency_table_destroy(cf_frequency_table* table);
CF_API cf_frequency_summary
cf_frequency_table_summary(const cf_frequency_table* table);
/* Distinct selected points in ascending (r, s) order. */
CF_API size_t cf_frequency_table_size(const cf_frequency_table* table);
CF_API cf_status cf_frequency_table_entry(const cf_frequency_table* table,
                                          size_t index, double* r, double* s,
                                          size_t* count);

/* ---- QQ envelope ------------------------------------------------------- */

typedef struct cf_envelope_row {
  size_t rank;
  double theoretical;
  double observed;
  double lower;
  double upper;
} cf_envelope_row;

/* Writes cf_sample_size(sample) rows. */
CF_API cf_status cf_envelope(const cf_sample* sample, double alpha,
                             double beta, size_t simulations, uint64_t seed,
                             double coverage, cf_envelope_row* out);

#ifdef __cplusplus
}
#endif

#endif /* CLOSEDFIT_CLOSEDFIT_H_ */
