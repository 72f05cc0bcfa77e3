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

#include "riskaoi/env.h"

#include <string>

#include "riskaoi/errors.h"
#include "riskaoi/strategy.h"

namespace riskaoi {

void EnvSpec::Validate() const {
  params.Validate();
  query.Validate();
  risk.Validate();
}

AoIState AoIKernel(const AoIState& state, Action action, bool arrival,
                   bool success) {
  const bool delivered = action == Action::kSend && success;
  AoIState next;
  next.rx = delivered ? state.tx + 1 : state.rx + 1;
  next.tx = arrival ? 0 : state.tx + 1;
  return next;
}

AoIIState AoIIKernel(const AoIIState& state, Action action,
                     bool stay_or_return, bool success) {
  const bool delivered = action == Action::kSend && success;
  if (stay_or_return || delivered) return AoIIState{true, 0};
  return AoIIState{false, state.aoii + 1};
}

Environment::Environment(const EnvSpec& spec, std::uint64_t seed,
                         std::uint64_t horizon)
    : spec_(spec),
      horizon_(horizon),
      arrival_rng_(seed, Substream::kArrival),
      channel_rng_(seed, Substream::kChannel),
      query_rng_(seed, Substream::kQuery),
      source_rng_(seed, Substream::kSource),
      policy_rng_(seed, Substream::kPolicy) {
  spec_.Validate();
  if (spec_.metric == Metric::kAoII) {
    state_ = AoIIState{};
  } else {
    state_ = AoIState{};
  }
}

StepOutcome Environment::Step(Action action) {
  if (finished()) {
    throw UsageError("environment stepped past its horizon of " +
                     std::to_string(horizon_) + " steps");
  }
  ++steps_;

  StepOutcome out;
  out.sent = action == Action::kSend;
  // The channel is sampled every step so its stream does not depend on the
  // sequence of actions.
  out.success = channel_rng_.Bernoulli(spec_.params.p) && out.sent;

  const SystemParams& params = spec_.params;
  switch (spec_.metric) {
    case Metric::kAoI:
    case Metric::kQAoI: {
      const bool arrival = arrival_rng_.Bernoulli(params.lambda);
      const AoIState next =
          AoIKernel(std::get<AoIState>(state_), action, arrival, out.success);
      const bool risky_age = IsRiskyAoI(next, spec_.risk.zeta);
      if (spec_.metric == Metric::kAoI) {
        out.query = false;
        out.cost = StepCost(next.rx, out.sent, params);
        out.risky = risky_age;
      } else {
        out.query = query_rng_.Bernoulli(spec_.query.q);
        out.cost = StepCost(out.query ? next.rx : 0, out.sent, params);
        out.risky = risky_age && out.query;
      }
      out.next_state = next;
      break;
    }
    case Metric::kAoII: {
      const auto& cur = std::get<AoIIState>(state_);
      const double event_prob =
          cur.synced ? spec_.source.p_r() : spec_.source.p_c();
      const bool stay_or_return = source_rng_.Bernoulli(event_prob);
      const AoIIState next =
          AoIIKernel(cur, action, stay_or_return, out.success);
      out.cost = StepCost(next.aoii, out.sent, params);
      out.risky = IsRiskyAoII(next, spec_.risk.zeta_aoii);
      out.next_state = next;
      break;
    }
  }
  state_ = out.next_state;
  return out;
}

double TrajectoryStats::average_cost() const {
  return steps == 0 ? 0.0 : total_cost / static_cast<double>(steps);
}

double TrajectoryStats::risky_frequency() const {
  return steps == 0 ? 0.0
                    : static_cast<double>(risky_steps) /
                          static_cast<double>(steps);
}

double TrajectoryStats::send_rate() const {
  return steps == 0 ? 0.0
                    : static_cast<double>(sends) / static_cast<double>(steps);
}

double TrajectoryStats::OccupancyFrequency(std::int64_t age) const {
  if (steps == 0 || age < 0 ||
      static_cast<std::size_t>(age) >= occupancy.size()) {
    return 0.0;
  }
  return static_cast<double>(occupancy[static_cast<std::size_t>(age)]) /
         static_cast<double>(steps);
}

TrajectoryStats RunPolicy(Environment& env, const Policy& policy,
                          std::uint64_t horizon) {
  if (horizon == 0) throw InvalidArgument("horizon must be at least 1");
  TrajectoryStats stats;
  stats.occupancy.assign(64, 0);
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const Action action = policy.Decide(env.state(), env.policy_rng());
    const StepOutcome out = env.Step(action);
    stats.total_cost += out.cost;
    stats.sends += out.sent ? 1 : 0;
    stats.risky_steps += out.risky ? 1 : 0;
    const auto age = static_cast<std::size_t>(AgeOf(out.next_state));
    if (age >= stats.occupancy.size()) stats.occupancy.resize(2 * age + 1, 0);
    ++stats.occupancy[age];
  }
  stats.steps = horizon;
  return stats;
}

}  // namespace riskaoi
