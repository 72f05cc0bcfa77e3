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

#include "riskaoi/riskaoi.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "riskaoi/analytic.h"
#include "riskaoi/config.h"
#include "riskaoi/errors.h"
#include "riskaoi/experiments.h"
#include "riskaoi/learning.h"
#include "riskaoi/qtable.h"
#include "riskaoi/strategy.h"

struct rsk_config {
  riskaoi::ExperimentConfig value;
};

struct rsk_policy {
  std::shared_ptr<const riskaoi::Policy> value;
};

struct rsk_qtable {
  std::shared_ptr<const riskaoi::QTable> value;
};

struct rsk_results {
  std::vector<riskaoi::experiments::ResultRow> rows;
  std::vector<std::pair<std::string, riskaoi::experiments::SweepResult>>
      sweeps;
  std::string extra_summary;
};

namespace {

namespace ex = riskaoi::experiments;

thread_local std::string g_last_error;

rsk_status Fail(rsk_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn and translates library exceptions into status codes.
template <typename Fn>
rsk_status Guard(Fn&& fn) {
  try {
    return fn();
  } catch (const riskaoi::InvalidArgument& e) {
    return Fail(RSK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const riskaoi::Inapplicable& e) {
    return Fail(RSK_ERR_INAPPLICABLE, e.what());
  } catch (const riskaoi::Infeasible& e) {
    return Fail(RSK_ERR_INFEASIBLE, e.what());
  } catch (const riskaoi::NonConvergent& e) {
    return Fail(RSK_ERR_NONCONVERGENT, e.what());
  } catch (const riskaoi::UsageError& e) {
    return Fail(RSK_ERR_USAGE, e.what());
  } catch (const riskaoi::IoError& e) {
    return Fail(RSK_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(RSK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(RSK_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(RSK_ERR_INTERNAL, "unknown error");
  }
}

rsk_status Null(const char* what) {
  return Fail(RSK_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL");
}

rsk_status CopyOut(const std::string& text, char* buf, size_t cap,
                   size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf == nullptr || cap < text.size() + 1) {
    if (buf != nullptr && cap > 0) buf[0] = '\0';
    return Fail(RSK_ERR_BUFFER_TOO_SMALL,
                "buffer needs " + std::to_string(text.size() + 1) + " bytes");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return RSK_OK;
}

rsk_run_stats ToC(const ex::RunStats& s) {
  rsk_run_stats out{};
  out.runs = s.runs();
  out.mean_cost = s.mean_cost;
  out.std_cost = s.std_cost;
  out.mean_risky_freq = s.mean_risky_freq;
  out.std_risky_freq = s.std_risky_freq;
  out.mean_send_rate = s.mean_send_rate;
  return out;
}

std::optional<double> QueryFor(const riskaoi::ExperimentConfig& c) {
  switch (c.metric) {
    case riskaoi::Metric::kAoI:
      return std::nullopt;
    case riskaoi::Metric::kQAoI:
      return c.query.q;
    case riskaoi::Metric::kAoII:
      break;
  }
  throw riskaoi::Inapplicable(
      "closed forms cover aoi and qaoi only; use simulation for aoii");
}

}  // namespace

extern "C" {

const char* rsk_version(void) { return "1.0.0"; }

const char* rsk_status_name(rsk_status status) {
  switch (status) {
    case RSK_OK: return "ok";
    case RSK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RSK_ERR_INFEASIBLE: return "infeasible";
    case RSK_ERR_IO: return "i/o error";
    case RSK_ERR_USAGE: return "usage error";
    case RSK_ERR_INAPPLICABLE: return "inapplicable";
    case RSK_ERR_NONCONVERGENT: return "non-convergent";
    case RSK_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case RSK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rsk_last_error(void) { return g_last_error.c_str(); }

rsk_status rsk_config_create(rsk_config** out) {
  if (!out) return Null("out");
  return Guard([&] {
    *out = new rsk_config{};
    return RSK_OK;
  });
}

rsk_status rsk_config_clone(const rsk_config* config, rsk_config** out) {
  if (!config) return Null("config");
  if (!out) return Null("out");
  return Guard([&] {
    *out = new rsk_config{config->value};
    return RSK_OK;
  });
}

void rsk_config_destroy(rsk_config* config) { delete config; }

rsk_status rsk_config_set(rsk_config* config, const char* key,
                          const char* value) {
  if (!config) return Null("config");
  if (!key) return Null("key");
  if (!value) return Null("value");
  return Guard([&] {
    riskaoi::SetConfigValue(config->value, key, value);
    return RSK_OK;
  });
}

rsk_status rsk_config_get(const rsk_config* config, const char* key,
                          char* buf, size_t cap, size_t* needed) {
  if (!config) return Null("config");
  if (!key) return Null("key");
  return Guard([&] {
    return CopyOut(riskaoi::GetConfigValue(config->value, key), buf, cap,
                   needed);
  });
}

rsk_status rsk_config_parse(rsk_config* config, const char* text) {
  if (!config) return Null("config");
  if (!text) return Null("text");
  return Guard([&] {
    riskaoi::ParseConfigText(config->value, text);
    return RSK_OK;
  });
}

rsk_status rsk_config_load_file(rsk_config* config, const char* path) {
  if (!config) return Null("config");
  if (!path) return Null("path");
  return Guard([&] {
    riskaoi::LoadConfigFile(config->value, path);
    return RSK_OK;
  });
}

rsk_status rsk_config_dump(const rsk_config* config, char* buf, size_t cap,
                           size_t* needed) {
  if (!config) return Null("config");
  return Guard([&] {
    return CopyOut(riskaoi::DumpConfig(config->value), buf, cap, needed);
  });
}

rsk_status rsk_config_validate(const rsk_config* config) {
  if (!config) return Null("config");
  return Guard([&] {
    config->value.Validate();
    return RSK_OK;
  });
}

size_t rsk_config_key_count(void) { return riskaoi::ConfigKeys().size(); }

const char* rsk_config_key_name(size_t i) {
  const auto keys = riskaoi::ConfigKeys();
  return i < keys.size() ? keys[i].name.data() : nullptr;
}

const char* rsk_config_key_help(size_t i) {
  const auto keys = riskaoi::ConfigKeys();
  return i < keys.size() ? keys[i].help.data() : nullptr;
}

rsk_status rsk_analytic_evaluate(const rsk_config* config, int64_t n,
                                 rsk_analytic_report* out) {
  if (!config) return Null("config");
  if (!out) return Null("out");
  return Guard([&] {
    const auto& c = config->value;
    const auto q = QueryFor(c);
    const auto r = riskaoi::analytic::EvaluateThreshold(n, c.params,
                                                        c.risk.zeta, q);
    out->n = r.n;
    out->cost = r.cost;
    out->period_length = r.period_length;
    out->attempts_per_period = r.attempts_per_period;
    out->has_risky_frequency = r.risky_frequency.has_value() ? 1 : 0;
    out->risky_frequency = r.risky_frequency.value_or(0.0);
    return RSK_OK;
  });
}

rsk_status rsk_analytic_freq_k(const rsk_config* config, int64_t n, int64_t k,
                               double* out) {
  if (!config) return Null("config");
  if (!out) return Null("out");
  return Guard([&] {
    *out = riskaoi::analytic::FreqK(k, n, config->value.params);
    return RSK_OK;
  });
}

rsk_status rsk_optimize(const rsk_config* config, int64_t n_max,
                        double risk_budget, int64_t* n_out,
                        double* min_risk) {
  if (!config) return Null("config");
  if (!n_out) return Null("n_out");
  return Guard([&] {
    const auto& c = config->value;
    const auto q = QueryFor(c);
    if (risk_budget < 0.0) {
      *n_out = riskaoi::analytic::OptimalThreshold(c.params, n_max, q);
      return RSK_OK;
    }
    try {
      *n_out = riskaoi::analytic::RiskConstrainedThreshold(
          risk_budget, c.risk.zeta, c.params, n_max, q);
    } catch (const riskaoi::Infeasible& e) {
      if (min_risk) *min_risk = e.min_achievable_risk();
      throw;
    }
    return RSK_OK;
  });
}

rsk_status rsk_policy_threshold(const rsk_config* config, int64_t threshold,
                                rsk_policy** out) {
  if (!config) return Null("config");
  if (!out) return Null("out");
  return Guard([&] {
    std::shared_ptr<const riskaoi::Policy> p;
    if (config->value.metric == riskaoi::Metric::kAoII) {
      p = std::make_shared<riskaoi::AoIIThresholdPolicy>(threshold);
    } else {
      p = std::make_shared<riskaoi::ThresholdPolicy>(threshold);
    }
    *out = new rsk_policy{std::move(p)};
    return RSK_OK;
  });
}

rsk_status rsk_policy_random(double send_prob, rsk_policy** out) {
  if (!out) return Null("out");
  return Guard([&] {
    *out = new rsk_policy{std::make_shared<riskaoi::RandomPolicy>(send_prob)};
    return RSK_OK;
  });
}

rsk_status rsk_policy_greedy(const rsk_qtable* table, rsk_policy** out) {
  if (!table) return Null("table");
  if (!out) return Null("out");
  return Guard([&] {
    *out = new rsk_policy{std::make_shared<riskaoi::GreedyPolicy>(table->value)};
    return RSK_OK;
  });
}

void rsk_policy_destroy(rsk_policy* policy) { delete policy; }

rsk_status rsk_evaluate(const rsk_config* config, const rsk_policy* policy,
                        rsk_run_stats* out) {
  if (!config) return Null("config");
  if (!policy) return Null("policy");
  if (!out) return Null("out");
  return Guard([&] {
    const auto& c = config->value;
    c.Validate();
    *out = ToC(ex::Evaluate(*policy->value, c.env_spec(), c.test_steps, c.runs,
                            c.seed, c.workers));
    return RSK_OK;
  });
}

rsk_status rsk_train(const rsk_config* config, rsk_qtable** out,
                     rsk_train_info* info) {
  if (!config) return Null("config");
  if (!out) return Null("out");
  return Guard([&] {
    const auto& c = config->value;
    c.Validate();
    auto report = riskaoi::learning::Train(
        c.env_spec(), c.learning_params(c.risk.rho, c.learn_steps), c.seed);
    if (info) {
      info->steps = c.learn_steps;
      info->final_epsilon = report.final_epsilon;
      info->exploratory_actions = report.exploratory_actions;
      info->risky_transitions = report.risky_transitions;
    }
    *out = new rsk_qtable{
        std::make_shared<const riskaoi::QTable>(std::move(report.table))};
    return RSK_OK;
  });
}

rsk_status rsk_qtable_save(const rsk_qtable* table, const char* path) {
  if (!table) return Null("table");
  if (!path) return Null("path");
  return Guard([&] {
    table->value->SaveFile(path);
    return RSK_OK;
  });
}

rsk_status rsk_qtable_load(const char* path, rsk_qtable** out) {
  if (!path) return Null("path");
  if (!out) return Null("out");
  return Guard([&] {
    *out = new rsk_qtable{std::make_shared<const riskaoi::QTable>(
        riskaoi::QTable::LoadFile(path))};
    return RSK_OK;
  });
}

rsk_status rsk_qtable_dump(const rsk_qtable* table, char* buf, size_t cap,
                           size_t* needed) {
  if (!table) return Null("table");
  return Guard([&] {
    std::ostringstream os;
    table->value->Save(os);
    return CopyOut(os.str(), buf, cap, needed);
  });
}

void rsk_qtable_destroy(rsk_qtable* table) { delete table; }

rsk_status rsk_results_create(rsk_results** out) {
  if (!out) return Null("out");
  return Guard([&] {
    *out = new rsk_results{};
    return RSK_OK;
  });
}

void rsk_results_destroy(rsk_results* results) { delete results; }

rsk_status rsk_results_add_evaluation(
    rsk_results* results, const rsk_config* config, const rsk_policy* policy,
    const char* experiment_id, const char* strategy, const char* param,
    uint64_t learn_steps, rsk_run_stats* stats) {
  if (!results) return Null("results");
  if (!config) return Null("config");
  if (!policy) return Null("policy");
  return Guard([&] {
    const auto& c = config->value;
    c.Validate();
    ex::ResultRow row;
    row.experiment_id = experiment_id ? experiment_id : "";
    row.metric = std::string(riskaoi::MetricName(c.metric));
    row.strategy = strategy ? strategy : policy->value->Name();
    row.param = param ? param : "";
    row.learn_steps = learn_steps;
    row.test_steps = c.test_steps;
    row.stats = ex::Evaluate(*policy->value, c.env_spec(), c.test_steps,
                             c.runs, c.seed, c.workers);
    if (stats) *stats = ToC(row.stats);
    results->rows.push_back(std::move(row));
    return RSK_OK;
  });
}

rsk_status rsk_reproduce(const rsk_config* config, const char* figure_id,
                         rsk_results** out) {
  if (!config) return Null("config");
  if (!figure_id) return Null("figure_id");
  if (!out) return Null("out");
  return Guard([&] {
    ex::Reproduction r = ex::Reproduce(figure_id, config->value);
    auto* res = new rsk_results{};
    res->rows = std::move(r.rows);
    res->sweeps = std::move(r.sweeps);
    // Reproduce's summary already starts with the per-row table.
    const std::string table = ex::Summarize(res->rows);
    res->extra_summary = r.summary.substr(std::min(table.size(), r.summary.size()));
    *out = res;
    return RSK_OK;
  });
}

size_t rsk_figure_count(void) { return ex::FigureIds().size(); }

const char* rsk_figure_id(size_t i) {
  const auto& ids = ex::FigureIds();
  return i < ids.size() ? ids[i].c_str() : nullptr;
}

size_t rsk_results_row_count(const rsk_results* results) {
  return results ? results->rows.size() : 0;
}

rsk_status rsk_results_row(const rsk_results* results, size_t i,
                           rsk_result_row* out) {
  if (!results) return Null("results");
  if (!out) return Null("out");
  if (i >= results->rows.size()) {
    return Fail(RSK_ERR_INVALID_ARGUMENT,
                "row " + std::to_string(i) + " out of range");
  }
  const auto& r = results->rows[i];
  out->experiment_id = r.experiment_id.c_str();
  out->metric = r.metric.c_str();
  out->strategy = r.strategy.c_str();
  out->param = r.param.c_str();
  out->learn_steps = r.learn_steps;
  out->test_steps = r.test_steps;
  out->stats = ToC(r.stats);
  return RSK_OK;
}

rsk_status rsk_results_csv(const rsk_results* results, char* buf, size_t cap,
                           size_t* needed) {
  if (!results) return Null("results");
  return Guard(
      [&] { return CopyOut(ex::ResultsCsv(results->rows), buf, cap, needed); });
}

rsk_status rsk_results_summary(const rsk_results* results, char* buf,
                               size_t cap, size_t* needed) {
  if (!results) return Null("results");
  return Guard([&] {
    return CopyOut(ex::Summarize(results->rows) + results->extra_summary, buf,
                   cap, needed);
  });
}

rsk_status rsk_results_write(const rsk_results* results, const char* path) {
  if (!results) return Null("results");
  if (!path) return Null("path");
  return Guard([&] {
    ex::EmitResults(results->rows, path);
    return RSK_OK;
  });
}

rsk_status rsk_results_write_plot_data(const rsk_results* results,
                                       const char* prefix) {
  if (!results) return Null("results");
  if (!prefix) return Null("prefix");
  return Guard([&] {
    for (std::size_t i = 0; i < results->sweeps.size(); ++i) {
      std::string p = prefix;
      if (results->sweeps.size() > 1) p += "." + std::to_string(i);
      ex::EmitPlotData(results->sweeps[i].second, p);
    }
    return RSK_OK;
  });
}

}  // extern "C"
