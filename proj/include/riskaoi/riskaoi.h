// Copyright 2026 The riskaoi Authors
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

/* Stable C interface to the riskaoi library.
 *
 * Objects are opaque handles created by rsk_*_create-style calls and
 * released by the matching *_destroy. Every fallible call returns an
 * rsk_status; on failure rsk_last_error() describes the problem for the
 * calling thread until its next failing call. Functions that produce text
 * copy it into a caller buffer and report the required size (including the
 * terminating NUL) through `needed`; pass buf = NULL to query the size. */
#ifndef RISKAOI_RISKAOI_H_
#define RISKAOI_RISKAOI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RSK_API __declspec(dllexport)
#else
#define RSK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsk_status {
  RSK_OK = 0,
  RSK_ERR_INVALID_ARGUMENT = 1,
  RSK_ERR_INFEASIBLE = 2,
  RSK_ERR_IO = 3,
  RSK_ERR_USAGE = 4,
  RSK_ERR_INAPPLICABLE = 5,
  RSK_ERR_NONCONVERGENT = 6,
  RSK_ERR_BUFFER_TOO_SMALL = 7,
  RSK_ERR_INTERNAL = 8
} rsk_status;

typedef struct rsk_config rsk_config;
typedef struct rsk_policy rsk_policy;
typedef struct rsk_qtable rsk_qtable;
typedef struct rsk_results rsk_results;

RSK_API const char* rsk_version(void);
RSK_API const char* rsk_status_name(rsk_status status);
RSK_API const char* rsk_last_error(void);

/* ---- configuration ---------------------------------------------------- */

/* A fresh config holds the reference defaults. */
RSK_API rsk_status rsk_config_create(rsk_config** out);
RSK_API rsk_status rsk_config_clone(const rsk_config* config, rsk_config** out);
RSK_API void rsk_config_destroy(rsk_config* config);

RSK_API rsk_status rsk_config_set(rsk_config* config, const char* key,
                                  const char* value);
RSK_API rsk_status rsk_config_get(const rsk_config* config, const char* key,
                                  char* buf, size_t cap, size_t* needed);
/* "key = value" lines, '#' comments. Unknown keys are errors. */
RSK_API rsk_status rsk_config_parse(rsk_config* config, const char* text);
RSK_API rsk_status rsk_config_load_file(rsk_config* config, const char* path);
RSK_API rsk_status rsk_config_dump(const rsk_config* config, char* buf,
                                   size_t cap, size_t* needed);
RSK_API rsk_status rsk_config_validate(const rsk_config* config);

RSK_API size_t rsk_config_key_count(void);
/* NULL when i is out of range. */
RSK_API const char* rsk_config_key_name(size_t i);
RSK_API const char* rsk_config_key_help(size_t i);

/* ---- closed forms (AoI and QAoI threshold policies) -------------------- */

typedef struct rsk_analytic_report {
  int64_t n;
  double cost;
  double period_length;
  double attempts_per_period;
  int has_risky_frequency; /* 0 when zeta <= n */
  double risky_frequency;
} rsk_analytic_report;

/* Reads metric (aoi or qaoi) and the model parameters from the config. */
RSK_API rsk_status rsk_analytic_evaluate(const rsk_config* config, int64_t n,
                                         rsk_analytic_report* out);
/* Long-run frequency of receiver age k under TB(n); requires k > n. */
RSK_API rsk_status rsk_analytic_freq_k(const rsk_config* config, int64_t n,
                                       int64_t k, double* out);
/* Cost-minimal threshold in [1, n_max]. A negative risk_budget means
 * unconstrained. On RSK_ERR_INFEASIBLE, *min_risk (if non-NULL) receives
 * the smallest achievable risky frequency. */
RSK_API rsk_status rsk_optimize(const rsk_config* config, int64_t n_max,
                                double risk_budget, int64_t* n_out,
                                double* min_risk);

/* ---- policies and evaluation ------------------------------------------ */

/* TB(n) for aoi/qaoi, TB(theta) for aoii, chosen by the config's metric. */
RSK_API rsk_status rsk_policy_threshold(const rsk_config* config,
                                        int64_t threshold, rsk_policy** out);
RSK_API rsk_status rsk_policy_random(double send_prob, rsk_policy** out);
RSK_API rsk_status rsk_policy_greedy(const rsk_qtable* table,
                                     rsk_policy** out);
RSK_API void rsk_policy_destroy(rsk_policy* policy);

typedef struct rsk_run_stats {
  uint64_t runs;
  double mean_cost;
  double std_cost;
  double mean_risky_freq;
  double std_risky_freq;
  double mean_send_rate;
} rsk_run_stats;

/* config.runs trajectories of config.test_steps each, seeded from
 * config.seed, on config.workers threads. */
RSK_API rsk_status rsk_evaluate(const rsk_config* config,
                                const rsk_policy* policy, rsk_run_stats* out);

/* ---- learning --------------------------------------------------------- */

typedef struct rsk_train_info {
  uint64_t steps;
  double final_epsilon;
  uint64_t exploratory_actions;
  uint64_t risky_transitions;
} rsk_train_info;

/* Trains for config.learn_steps with cost shaping config.rho (1 = plain
 * Q-learning), seeded from config.seed. info may be NULL. */
RSK_API rsk_status rsk_train(const rsk_config* config, rsk_qtable** out,
                             rsk_train_info* info);
RSK_API rsk_status rsk_qtable_save(const rsk_qtable* table, const char* path);
RSK_API rsk_status rsk_qtable_load(const char* path, rsk_qtable** out);
RSK_API rsk_status rsk_qtable_dump(const rsk_qtable* table, char* buf,
                                   size_t cap, size_t* needed);
RSK_API void rsk_qtable_destroy(rsk_qtable* table);

/* ---- experiment results ----------------------------------------------- */

typedef struct rsk_result_row {
  const char* experiment_id; /* valid while the results handle lives */
  const char* metric;
  const char* strategy;
  const char* param;
  uint64_t learn_steps;
  uint64_t test_steps;
  rsk_run_stats stats;
} rsk_result_row;

RSK_API rsk_status rsk_results_create(rsk_results** out);
RSK_API void rsk_results_destroy(rsk_results* results);

/* Evaluates `policy` like rsk_evaluate and appends one row. stats may be
 * NULL. */
RSK_API rsk_status rsk_results_add_evaluation(
    rsk_results* results, const rsk_config* config, const rsk_policy* policy,
    const char* experiment_id, const char* strategy, const char* param,
    uint64_t learn_steps, rsk_run_stats* stats);

/* Runs one reproduction target; rsk_figure_id lists the valid ids. */
RSK_API rsk_status rsk_reproduce(const rsk_config* config,
                                 const char* figure_id, rsk_results** out);
RSK_API size_t rsk_figure_count(void);
RSK_API const char* rsk_figure_id(size_t i);

RSK_API size_t rsk_results_row_count(const rsk_results* results);
RSK_API rsk_status rsk_results_row(const rsk_results* results, size_t i,
                                   rsk_result_row* out);
RSK_API rsk_status rsk_results_csv(const rsk_results* results, char* buf,
                                   size_t cap, size_t* needed);
RSK_API rsk_status rsk_results_summary(const rsk_results* results, char* buf,
                                       size_t cap, size_t* needed);
/* Writes the CSV to path and the summary to path + ".summary.txt". */
RSK_API rsk_status rsk_results_write(const rsk_results* results,
                                     const char* path);
/* Writes gnuplot data for every sweep held by the results (reproduce of a
 * threshold figure) under `prefix`. Returns RSK_OK with nothing written
 * when there are no sweeps. */
RSK_API rsk_status rsk_results_write_plot_data(const rsk_results* results,
                                               const char* prefix);

#ifdef __cplusplus
}
#endif

#endif /* RISKAOI_RISKAOI_H_ */
