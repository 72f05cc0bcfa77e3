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

#ifndef RISKAOI_LEARNING_H_
#define RISKAOI_LEARNING_H_

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "riskaoi/env.h"
#include "riskaoi/qtable.h"
#include "riskaoi/strategy.h"

namespace riskaoi::learning {

enum class RateSchedule : std::uint8_t {
  kConstant,    // alpha_i = rate
  kVisitCount,  // alpha_i = 1 / (1 + visits(s, a))^rate_omega
};

struct LearningParams {
  double gamma = 0.7;
  double epsilon0 = 0.9;
  double delta = 0.999;
  double epsilon_min = 0.0;
  RateSchedule schedule = RateSchedule::kConstant;
  double rate = 0.15;
  double rate_omega = 0.8;
  std::uint64_t steps = 100'000;
  double rho = 2.0;  // 1 gives plain (risk-neutral) Q-learning
  std::int64_t a_max = 128;
  // When set, QAoI steps without a query cost nothing at all, energy
  // included. By default only the age term is dropped.
  bool qaoi_strict_gating = false;

  void Validate() const;
};

struct TrainReport {
  QTable table;
  std::vector<std::uint64_t> visits;  // per (state, action), sums to steps
  // (iteration, epsilon used at that iteration), sampled.
  std::vector<std::pair<std::uint64_t, double>> epsilon_trace;
  double final_epsilon = 0.0;
  std::uint64_t exploratory_actions = 0;
  std::uint64_t risky_transitions = 0;
  double max_adjusted_cost = 0.0;
};

// Cost of a transition scaled by rho when it lands in a risky state.
double RiskAdjustedCost(double cost, bool next_risky, double rho);

// Q(s,a) <- (1 - rate) Q(s,a) + rate (cost + gamma min_a' Q(s',a')).
// Returns the new Q(s,a); no other entry is touched.
double QUpdate(QTable& table, std::size_t state, Action action,
               double adjusted_cost, std::size_t next_state, double gamma,
               double rate);

// max(epsilon_min, epsilon0 * delta^i): the rate used at iteration i.
double ExplorationRate(const LearningParams& params, std::uint64_t i);

// Epsilon-greedy tabular Q-learning with the risky-state multiplier.
TrainReport Train(const EnvSpec& env_spec, const LearningParams& params,
                  std::uint64_t seed);

std::shared_ptr<const GreedyPolicy> ExtractPolicy(QTable table);

}  // namespace riskaoi::learning

#endif  // RISKAOI_LEARNING_H_
