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

#include "riskaoi/learning.h"

#include <algorithm>
#include <cmath>

#include "riskaoi/errors.h"

namespace riskaoi::learning {

namespace {

constexpr std::uint64_t kTraceEvery = 1000;

}  // namespace

void LearningParams::Validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw InvalidArgument("gamma must lie in (0, 1)");
  }
  if (!(epsilon0 >= 0.0 && epsilon0 <= 1.0)) {
    throw InvalidArgument("epsilon0 must lie in [0, 1]");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InvalidArgument("delta must lie in (0, 1]");
  }
  if (!(epsilon_min >= 0.0 && epsilon_min <= 1.0)) {
    throw InvalidArgument("epsilon_min must lie in [0, 1]");
  }
  if (schedule == RateSchedule::kConstant && !(rate >= 0.0 && rate <= 1.0)) {
    throw InvalidArgument("learning rate must lie in [0, 1]");
  }
  if (schedule == RateSchedule::kVisitCount && !(rate_omega > 0.0)) {
    throw InvalidArgument("rate_omega must be positive");
  }
  if (!(rho >= 0.0)) throw InvalidArgument("rho must be nonnegative");
  if (a_max < 1) throw InvalidArgument("a_max must be at least 1");
}

double RiskAdjustedCost(double cost, bool next_risky, double rho) {
  return next_risky ? rho * cost : cost;
}

double QUpdate(QTable& table, std::size_t state, Action action,
               double adjusted_cost, std::size_t next_state, double gamma,
               double rate) {
  const double next_value = std::min(table.at(next_state, Action::kWait),
                                     table.at(next_state, Action::kSend));
  double& q = table.at(state, action);
  q = (1.0 - rate) * q + rate * (adjusted_cost + gamma * next_value);
  return q;
}

double ExplorationRate(const LearningParams& params, std::uint64_t i) {
  return std::max(params.epsilon_min,
                  params.epsilon0 *
                      std::pow(params.delta, static_cast<double>(i)));
}

TrainReport Train(const EnvSpec& env_spec, const LearningParams& params,
                  std::uint64_t seed) {
  params.Validate();
  Environment env(env_spec, seed);
  RngStream explore(seed, Substream::kExploration);

  TrainReport report{QTable(env_spec.metric, params.a_max), {}, {}, 0.0,
                     0, 0, 0.0};
  QTable& table = report.table;
  report.visits.assign(2 * table.num_states(), 0);

  const bool strict =
      env_spec.metric == Metric::kQAoI && params.qaoi_strict_gating;
  double epsilon = params.epsilon0;
  std::size_t state = table.StateIndex(env.state());

  for (std::uint64_t i = 0; i < params.steps; ++i) {
    if (i % kTraceEvery == 0) report.epsilon_trace.emplace_back(i, epsilon);

    Action action;
    if (explore.Bernoulli(epsilon)) {
      action = explore.Bernoulli(0.5) ? Action::kSend : Action::kWait;
      ++report.exploratory_actions;
    } else {
      action = table.at(state, Action::kSend) < table.at(state, Action::kWait)
                   ? Action::kSend
                   : Action::kWait;
    }
    epsilon = std::max(params.epsilon_min, params.delta * epsilon);

    const StepOutcome out = env.Step(action);
    double cost = out.cost;
    if (strict && !out.query) cost = 0.0;
    const double adjusted = RiskAdjustedCost(cost, out.risky, params.rho);
    report.risky_transitions += out.risky ? 1 : 0;
    report.max_adjusted_cost = std::max(report.max_adjusted_cost, adjusted);

    const std::size_t next = table.StateIndex(out.next_state);
    std::uint64_t& visits =
        report.visits[2 * state + static_cast<std::size_t>(action)];
    const double rate =
        params.schedule == RateSchedule::kConstant
            ? params.rate
            : 1.0 / std::pow(1.0 + static_cast<double>(visits),
                             params.rate_omega);
    QUpdate(table, state, action, adjusted, next, params.gamma, rate);
    ++visits;
    state = next;
  }
  report.final_epsilon = epsilon;
  return report;
}

std::shared_ptr<const GreedyPolicy> ExtractPolicy(QTable table) {
  return std::make_shared<const GreedyPolicy>(
      std::make_shared<const QTable>(std::move(table)));
}

}  // namespace riskaoi::learning
