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

#ifndef RISKAOI_EXPERIMENTS_H_
#define RISKAOI_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riskaoi/config.h"
#include "riskaoi/env.h"
#include "riskaoi/strategy.h"

namespace riskaoi::experiments {

// Aggregate over independent runs. Standard deviations are across runs
// (sample, n - 1), zero for a single run.
struct RunStats {
  double mean_cost = 0.0;
  double std_cost = 0.0;
  double mean_risky_freq = 0.0;
  double std_risky_freq = 0.0;
  double mean_send_rate = 0.0;
  std::vector<double> costs;
  std::vector<double> risky_freqs;
  std::vector<double> send_rates;

  std::size_t runs() const { return costs.size(); }
};

RunStats Aggregate(std::vector<double> costs, std::vector<double> risky,
                   std::vector<double> send_rates);

// Calls fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
// concurrency). fn must only write to slots owned by its index.
void ParallelFor(std::uint64_t count, unsigned workers,
                 const std::function<void(std::uint64_t)>& fn);

// Seeds shared by every strategy inside one comparison.
std::uint64_t EvalSeed(std::uint64_t base_seed, std::uint64_t run);
std::uint64_t TrainSeed(std::uint64_t base_seed, std::uint64_t run);

// `runs` trajectories of `test_steps` from the initial state; run i uses
// EvalSeed(base_seed, i).
RunStats Evaluate(const Policy& policy, const EnvSpec& env_spec,
                  std::uint64_t test_steps, std::uint64_t runs,
                  std::uint64_t base_seed, unsigned workers = 0);

struct SweepPoint {
  double x = 0.0;
  RunStats stats;
  std::optional<double> analytic_cost;
  std::optional<double> analytic_risky;
};

struct SweepResult {
  std::string variable;  // "n", "theta" or "q"
  std::vector<SweepPoint> points;
  std::optional<std::size_t> best;  // index into points
  bool feasible = true;
  bool stopped_early = false;
  std::string note;
};

// Evaluates a threshold policy per entry of `thresholds` (n for AoI/QAoI,
// theta for AoII) on shared seeds. Without a budget the cheapest threshold
// wins. With one, thresholds are visited in ascending order, the scan stops
// at the first one whose risky frequency exceeds the budget, and the
// cheapest threshold within budget wins; if none qualifies, `feasible` is
// false and `best` is empty.
SweepResult ThresholdSweep(Metric metric,
                           const std::vector<std::int64_t>& thresholds,
                           const ExperimentConfig& config,
                           std::optional<double> risk_budget = std::nullopt);

struct StrategyStats {
  std::string strategy;
  std::string param;
  RunStats stats;
};

struct ComparisonResult {
  Metric metric = Metric::kAoI;
  std::uint64_t learn_steps = 0;
  std::int64_t tb_threshold = 0;
  // random, TQL, Q+RS, TB, plus always-send for AoII.
  std::vector<StrategyStats> strategies;

  const StrategyStats& at(std::string_view name) const;
};

// Trains TQL (rho = 1) and Q+RS (rho = config.risk.rho) afresh in every run
// and evaluates them next to the random and threshold baselines on the same
// evaluation seeds.
ComparisonResult LearningComparison(Metric metric, std::uint64_t learn_steps,
                                    const ExperimentConfig& config);

// Threshold used for the TB baseline when config.threshold is unset:
// analytic optimum for AoI/QAoI, empirical sweep over theta in {0..6} for
// AoII.
std::int64_t BaselineThreshold(Metric metric, const ExperimentConfig& config);

struct QueryPoint {
  double q = 0.0;
  std::int64_t optimal_threshold = 0;
  double analytic_cost = 0.0;
  std::optional<double> analytic_risky;
  ComparisonResult comparison;
};

std::vector<QueryPoint> QueryProbSweep(const std::vector<double>& q_values,
                                       const ExperimentConfig& config);

// One line of the results CSV.
struct ResultRow {
  std::string experiment_id;
  std::string metric;
  std::string strategy;
  std::string param;
  std::uint64_t learn_steps = 0;
  std::uint64_t test_steps = 0;
  RunStats stats;
};

extern const char* const kCsvHeader;

std::string FormatCsvRow(const ResultRow& row);
std::string ResultsCsv(const std::vector<ResultRow>& rows);
std::string Summarize(const std::vector<ResultRow>& rows);

// Writes the CSV to `path` and the summary next to it at
// `path + ".summary.txt"`. Throws IoError naming the path.
void EmitResults(const std::vector<ResultRow>& rows, const std::string& path);

// Whitespace-separated "x y yerr" lines: <prefix>.cost.dat,
// <prefix>.risky.dat and, when analytic overlays exist,
// <prefix>.analytic_cost.dat / <prefix>.analytic_risky.dat.
void EmitPlotData(const SweepResult& sweep, const std::string& prefix);

std::vector<ResultRow> SweepRows(const std::string& experiment_id,
                                 Metric metric, const SweepResult& sweep,
                                 std::uint64_t test_steps);
std::vector<ResultRow> ComparisonRows(const std::string& experiment_id,
                                      const ComparisonResult& comparison,
                                      std::uint64_t test_steps,
                                      const std::string& param = {});

struct Reproduction {
  std::vector<ResultRow> rows;
  std::vector<std::pair<std::string, SweepResult>> sweeps;
  std::string summary;
};

// Known ids: fig3a fig3b fig3c fig3d fig4 fig5 fig6 fig7 fig8.
const std::vector<std::string>& FigureIds();
Reproduction Reproduce(const std::string& figure_id,
                       const ExperimentConfig& config);

}  // namespace riskaoi::experiments

#endif  // RISKAOI_EXPERIMENTS_H_
