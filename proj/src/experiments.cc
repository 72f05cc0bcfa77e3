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

#include "riskaoi/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <thread>

#include "riskaoi/analytic.h"
#include "riskaoi/errors.h"
#include "riskaoi/learning.h"

namespace riskaoi::experiments {

namespace {

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double SampleStd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string FmtParam(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::unique_ptr<Policy> ThresholdFor(Metric metric, std::int64_t threshold) {
  if (metric == Metric::kAoII) {
    return std::make_unique<AoIIThresholdPolicy>(threshold);
  }
  return std::make_unique<ThresholdPolicy>(threshold);
}

}  // namespace

RunStats Aggregate(std::vector<double> costs, std::vector<double> risky,
                   std::vector<double> send_rates) {
  RunStats s;
  s.mean_cost = Mean(costs);
  s.std_cost = SampleStd(costs, s.mean_cost);
  s.mean_risky_freq = Mean(risky);
  s.std_risky_freq = SampleStd(risky, s.mean_risky_freq);
  s.mean_send_rate = Mean(send_rates);
  s.costs = std::move(costs);
  s.risky_freqs = std::move(risky);
  s.send_rates = std::move(send_rates);
  return s;
}

void ParallelFor(std::uint64_t count, unsigned workers,
                 const std::function<void(std::uint64_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(count, 1)));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t EvalSeed(std::uint64_t base_seed, std::uint64_t run) {
  return RunSeed(base_seed, run);
}

std::uint64_t TrainSeed(std::uint64_t base_seed, std::uint64_t run) {
  return RunSeed(~base_seed, run);
}

RunStats Evaluate(const Policy& policy, const EnvSpec& env_spec,
                  std::uint64_t test_steps, std::uint64_t runs,
                  std::uint64_t base_seed, unsigned workers) {
  if (runs < 1) throw InvalidArgument("runs must be at least 1");
  env_spec.Validate();
  std::vector<double> costs(runs), risky(runs), sends(runs);
  ParallelFor(runs, workers, [&](std::uint64_t i) {
    Environment env(env_spec, EvalSeed(base_seed, i));
    const TrajectoryStats t = RunPolicy(env, policy, test_steps);
    costs[i] = t.average_cost();
    risky[i] = t.risky_frequency();
    sends[i] = t.send_rate();
  });
  return Aggregate(std::move(costs), std::move(risky), std::move(sends));
}

SweepResult ThresholdSweep(Metric metric,
                           const std::vector<std::int64_t>& thresholds,
                           const ExperimentConfig& config,
                           std::optional<double> risk_budget) {
  if (thresholds.empty()) {
    throw InvalidArgument("threshold sweep needs at least one threshold");
  }
  config.Validate();
  std::vector<std::int64_t> order = thresholds;
  if (risk_budget) std::sort(order.begin(), order.end());

  const EnvSpec spec = config.env_spec(metric);
  SweepResult out;
  out.variable = metric == Metric::kAoII ? "theta" : "n";
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const std::int64_t th = order[idx];
    const auto policy = ThresholdFor(metric, th);
    SweepPoint pt;
    pt.x = static_cast<double>(th);
    pt.stats = Evaluate(*policy, spec, config.test_steps, config.runs,
                        config.seed, config.workers);
    if (metric != Metric::kAoII) {
      const std::optional<double> q =
          metric == Metric::kQAoI ? std::optional<double>(config.query.q)
                                  : std::nullopt;
      pt.analytic_cost = analytic::TbCostQAoI(th, config.params, q.value_or(1.0));
      if (config.risk.zeta > th) {
        pt.analytic_risky =
            analytic::RiskyFrequency(th, config.risk.zeta, config.params, {}, q);
      }
    }
    out.points.push_back(std::move(pt));
    if (risk_budget && out.points.back().stats.mean_risky_freq > *risk_budget) {
      out.stopped_early = idx + 1 < order.size();
      break;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    const RunStats& s = out.points[i].stats;
    if (risk_budget && s.mean_risky_freq > *risk_budget) continue;
    if (s.mean_cost < best) {
      best = s.mean_cost;
      out.best = i;
    }
  }
  if (!out.best) {
    out.feasible = false;
    double min_risk = std::numeric_limits<double>::infinity();
    for (const auto& p : out.points) {
      min_risk = std::min(min_risk, p.stats.mean_risky_freq);
    }
    out.note = "no threshold meets risk budget " + Fmt(*risk_budget) +
               "; lowest observed risky frequency " + Fmt(min_risk);
  }
  return out;
}

const StrategyStats& ComparisonResult::at(std::string_view name) const {
  for (const auto& s : strategies) {
    if (s.strategy == name) return s;
  }
  throw InvalidArgument("no strategy named '" + std::string(name) + "'");
}

std::int64_t BaselineThreshold(Metric metric, const ExperimentConfig& config) {
  if (config.threshold) return *config.threshold;
  switch (metric) {
    case Metric::kAoI:
      return analytic::OptimalThreshold(config.params, 64);
    case Metric::kQAoI:
      return analytic::OptimalThreshold(config.params, 64, config.query.q);
    case Metric::kAoII: {
      const SweepResult sweep =
          ThresholdSweep(metric, {0, 1, 2, 3, 4, 5, 6}, config);
      return static_cast<std::int64_t>(sweep.points[*sweep.best].x);
    }
  }
  return 1;
}

ComparisonResult LearningComparison(Metric metric, std::uint64_t learn_steps,
                                    const ExperimentConfig& config) {
  config.Validate();
  const EnvSpec spec = config.env_spec(metric);
  ComparisonResult out;
  out.metric = metric;
  out.learn_steps = learn_steps;
  out.tb_threshold = BaselineThreshold(metric, config);

  const RandomPolicy random(config.params.lambda);
  const auto tb = ThresholdFor(metric, out.tb_threshold);
  const AoIIThresholdPolicy always_send(0);
  const bool with_always = metric == Metric::kAoII;

  const std::size_t num = with_always ? 5 : 4;
  const std::uint64_t runs = config.runs;
  std::vector<std::vector<double>> cost(num, std::vector<double>(runs));
  auto risky = cost;
  auto sends = cost;

  const auto tql_params = config.learning_params(1.0, learn_steps);
  const auto qrs_params = config.learning_params(config.risk.rho, learn_steps);

  ParallelFor(runs, config.workers, [&](std::uint64_t i) {
    const std::uint64_t train_seed = TrainSeed(config.seed, i);
    const auto tql = learning::ExtractPolicy(
        learning::Train(spec, tql_params, train_seed).table);
    const auto qrs = learning::ExtractPolicy(
        learning::Train(spec, qrs_params, train_seed).table);
    const Policy* policies[5] = {&random, tql.get(), qrs.get(), tb.get(),
                                 &always_send};
    for (std::size_t k = 0; k < num; ++k) {
      Environment env(spec, EvalSeed(config.seed, i));
      const TrajectoryStats t = RunPolicy(env, *policies[k], config.test_steps);
      cost[k][i] = t.average_cost();
      risky[k][i] = t.risky_frequency();
      sends[k][i] = t.send_rate();
    }
  });

  const char* names[5] = {"random", "TQL", "Q+RS", "TB", "always-send"};
  const std::string params[5] = {FmtParam(config.params.lambda), "1",
                                 FmtParam(config.risk.rho),
                                 std::to_string(out.tb_threshold), "0"};
  for (std::size_t k = 0; k < num; ++k) {
    out.strategies.push_back(
        {names[k], params[k],
         Aggregate(std::move(cost[k]), std::move(risky[k]),
                   std::move(sends[k]))});
  }
  return out;
}

std::vector<QueryPoint> QueryProbSweep(const std::vector<double>& q_values,
                                       const ExperimentConfig& config) {
  std::vector<QueryPoint> out;
  for (double q : q_values) {
    if (!(q > 0.0 && q <= 1.0)) {
      throw InvalidArgument("query probabilities must lie in (0, 1]");
    }
    ExperimentConfig c = config;
    c.query.q = q;
    c.threshold.reset();
    QueryPoint pt;
    pt.q = q;
    pt.optimal_threshold = analytic::OptimalThreshold(c.params, 64, q);
    pt.analytic_cost = analytic::TbCostQAoI(pt.optimal_threshold, c.params, q);
    if (c.risk.zeta > pt.optimal_threshold) {
      pt.analytic_risky = analytic::RiskyFrequency(
          pt.optimal_threshold, c.risk.zeta, c.params, {}, q);
    }
    pt.comparison = LearningComparison(Metric::kQAoI, c.learn_steps, c);
    out.push_back(std::move(pt));
  }
  return out;
}

const char* const kCsvHeader =
    "experiment_id,metric,strategy,param,learn_steps,test_steps,runs,"
    "mean_cost,std_cost,mean_risky_freq,std_risky_freq";

std::string FormatCsvRow(const ResultRow& r) {
  return r.experiment_id + ',' + r.metric + ',' + r.strategy + ',' + r.param +
         ',' + std::to_string(r.learn_steps) + ',' +
         std::to_string(r.test_steps) + ',' + std::to_string(r.stats.runs()) +
         ',' + Fmt(r.stats.mean_cost) + ',' + Fmt(r.stats.std_cost) + ',' +
         Fmt(r.stats.mean_risky_freq) + ',' + Fmt(r.stats.std_risky_freq);
}

std::string ResultsCsv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += FormatCsvRow(r) + "\n";
  return out;
}

std::string Summarize(const std::vector<ResultRow>& rows) {
  std::string out;
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%-8s %-5s %-12s %-6s learn=%-8llu cost %.4f +- %.4f   "
                  "risky %.4f +- %.4f   (%zu runs)\n",
                  r.experiment_id.c_str(), r.metric.c_str(),
                  r.strategy.c_str(), r.param.c_str(),
                  static_cast<unsigned long long>(r.learn_steps),
                  r.stats.mean_cost, r.stats.std_cost, r.stats.mean_risky_freq,
                  r.stats.std_risky_freq, r.stats.runs());
    out += buf;
  }
  return out;
}

void EmitResults(const std::vector<ResultRow>& rows, const std::string& path) {
  WriteFile(path, ResultsCsv(rows));
  WriteFile(path + ".summary.txt", Summarize(rows));
}

void EmitPlotData(const SweepResult& sweep, const std::string& prefix) {
  std::string cost, risky, acost, arisky;
  for (const auto& p : sweep.points) {
    cost += Fmt(p.x) + ' ' + Fmt(p.stats.mean_cost) + ' ' +
            Fmt(p.stats.std_cost) + '\n';
    risky += Fmt(p.x) + ' ' + Fmt(p.stats.mean_risky_freq) + ' ' +
             Fmt(p.stats.std_risky_freq) + '\n';
    if (p.analytic_cost) acost += Fmt(p.x) + ' ' + Fmt(*p.analytic_cost) + " 0\n";
    if (p.analytic_risky) {
      arisky += Fmt(p.x) + ' ' + Fmt(*p.analytic_risky) + " 0\n";
    }
  }
  WriteFile(prefix + ".cost.dat", cost);
  WriteFile(prefix + ".risky.dat", risky);
  if (!acost.empty()) WriteFile(prefix + ".analytic_cost.dat", acost);
  if (!arisky.empty()) WriteFile(prefix + ".analytic_risky.dat", arisky);
}

std::vector<ResultRow> SweepRows(const std::string& experiment_id,
                                 Metric metric, const SweepResult& sweep,
                                 std::uint64_t test_steps) {
  std::vector<ResultRow> rows;
  for (const auto& p : sweep.points) {
    rows.push_back({experiment_id, std::string(MetricName(metric)), "TB",
                    FmtParam(p.x), 0, test_steps, p.stats});
  }
  return rows;
}

std::vector<ResultRow> ComparisonRows(const std::string& experiment_id,
                                      const ComparisonResult& comparison,
                                      std::uint64_t test_steps,
                                      const std::string& param) {
  std::vector<ResultRow> rows;
  for (const auto& s : comparison.strategies) {
    rows.push_back({experiment_id, std::string(MetricName(comparison.metric)),
                    s.strategy, param.empty() ? s.param : param,
                    comparison.learn_steps, test_steps, s.stats});
  }
  return rows;
}

const std::vector<std::string>& FigureIds() {
  static const std::vector<std::string> ids = {
      "fig3a", "fig3b", "fig3c", "fig3d", "fig4",
      "fig5",  "fig6",  "fig7",  "fig8"};
  return ids;
}

Reproduction Reproduce(const std::string& figure_id,
                       const ExperimentConfig& config) {
  Reproduction out;
  const std::uint64_t ts = config.test_steps;

  auto sweep = [&](Metric metric, std::vector<std::int64_t> ths) {
    SweepResult s = ThresholdSweep(metric, ths, config);
    auto rows = SweepRows(figure_id, metric, s, ts);
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    char buf[160];
    for (const auto& p : s.points) {
      if (p.analytic_cost) {
        std::snprintf(buf, sizeof buf, "  %s=%g analytic cost %.4f", s.variable.c_str(),
                      p.x, *p.analytic_cost);
        out.summary += buf;
        if (p.analytic_risky) {
          std::snprintf(buf, sizeof buf, "  analytic risky %.4f", *p.analytic_risky);
          out.summary += buf;
        }
        out.summary += "\n";
      }
    }
    std::snprintf(buf, sizeof buf, "  cost-minimal %s = %g\n", s.variable.c_str(),
                  s.points[*s.best].x);
    out.summary += buf;
    out.sweeps.emplace_back(figure_id, std::move(s));
  };
  auto compare = [&](Metric metric, std::uint64_t learn_steps) {
    const ComparisonResult c = LearningComparison(metric, learn_steps, config);
    auto rows = ComparisonRows(figure_id, c, ts);
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  };

  if (figure_id == "fig3a" || figure_id == "fig3b") {
    sweep(Metric::kAoI, {1, 2, 3, 4, 5, 6, 7, 8});
  } else if (figure_id == "fig3c") {
    sweep(Metric::kQAoI, {1, 2, 3, 4, 5, 6, 7, 8});
  } else if (figure_id == "fig3d") {
    sweep(Metric::kAoII, {0, 1, 2, 3, 4, 5, 6});
  } else if (figure_id == "fig4") {
    compare(Metric::kAoI, 100'000);
  } else if (figure_id == "fig5") {
    compare(Metric::kAoI, 1'000'000);
  } else if (figure_id == "fig6") {
    compare(Metric::kQAoI, 100'000);
    compare(Metric::kQAoI, 1'000'000);
  } else if (figure_id == "fig7") {
    ExperimentConfig c = config;
    c.learn_steps = 100'000;
    for (const QueryPoint& pt : QueryProbSweep({0.2, 0.4, 0.6, 0.8, 1.0}, c)) {
      const std::string q = FmtParam(pt.q);
      auto rows = ComparisonRows(figure_id, pt.comparison, ts, q);
      out.rows.insert(out.rows.end(), rows.begin(), rows.end());
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "  q=%s optimal threshold %lld, analytic cost %.4f\n",
                    q.c_str(), static_cast<long long>(pt.optimal_threshold),
                    pt.analytic_cost);
      out.summary += buf;
    }
  } else if (figure_id == "fig8") {
    compare(Metric::kAoII, 100'000);
    compare(Metric::kAoII, 1'000'000);
  } else {
    throw InvalidArgument("unknown figure id '" + figure_id +
                          "' (expected fig3a..fig3d, fig4..fig8)");
  }
  out.summary = Summarize(out.rows) + out.summary;
  return out;
}

}  // namespace riskaoi::experiments
