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

#ifndef RISKAOI_ENV_H_
#define RISKAOI_ENV_H_

#include <cstdint>
#include <vector>

#include "riskaoi/params.h"
#include "riskaoi/rng.h"
#include "riskaoi/state.h"

namespace riskaoi {

class Policy;

// Everything needed to build a simulator for one of the three metrics.
struct EnvSpec {
  Metric metric = Metric::kAoI;
  SystemParams params;
  QuerySpec query;    // used by kQAoI only
  SourceSpec source;  // used by kAoII only
  RiskSpec risk;

  void Validate() const;
  std::int64_t zeta() const {
    return metric == Metric::kAoII ? risk.zeta_aoii : risk.zeta;
  }
};

// Deterministic AoI transition. `arrival` is the arrival at the start of the
// next step; `success` is ignored unless the action is kSend.
AoIState AoIKernel(const AoIState& state, Action action, bool arrival,
                   bool success);

// Deterministic AoII transition. `stay_or_return` is the sampled source
// event: from a synced state the process stays put, from a mismatched state
// it moves back to the value the receiver holds.
AoIIState AoIIKernel(const AoIIState& state, Action action,
                     bool stay_or_return, bool success);

struct StepOutcome {
  EnvState next_state;
  double cost = 0.0;
  bool risky = false;
  bool query = false;
  bool sent = false;
  bool success = false;
};

// Single-threaded simulator. Costs use the post-transition age, i.e. the
// transition (s_t, a, s_{t+1}) is charged C_{t+1}.
class Environment {
 public:
  // horizon == 0 means unbounded.
  Environment(const EnvSpec& spec, std::uint64_t seed,
              std::uint64_t horizon = 0);

  StepOutcome Step(Action action);

  const EnvState& state() const { return state_; }
  const EnvSpec& spec() const { return spec_; }
  std::uint64_t steps_taken() const { return steps_; }
  bool finished() const { return horizon_ != 0 && steps_ >= horizon_; }

  // Stream reserved for randomized policies acting in this environment.
  RngStream& policy_rng() { return policy_rng_; }

 private:
  EnvSpec spec_;
  std::uint64_t horizon_;
  std::uint64_t steps_ = 0;
  EnvState state_;
  RngStream arrival_rng_;
  RngStream channel_rng_;
  RngStream query_rng_;
  RngStream source_rng_;
  RngStream policy_rng_;
};

struct TrajectoryStats {
  std::uint64_t steps = 0;
  std::uint64_t sends = 0;
  std::uint64_t risky_steps = 0;
  double total_cost = 0.0;
  // occupancy[k] counts steps whose post-transition age equals k.
  std::vector<std::uint64_t> occupancy;

  double average_cost() const;
  double risky_frequency() const;
  double send_rate() const;
  double OccupancyFrequency(std::int64_t age) const;
};

TrajectoryStats RunPolicy(Environment& env, const Policy& policy,
                          std::uint64_t horizon);

}  // namespace riskaoi

#endif  // RISKAOI_ENV_H_
