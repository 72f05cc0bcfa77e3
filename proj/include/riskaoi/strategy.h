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

#ifndef RISKAOI_STRATEGY_H_
#define RISKAOI_STRATEGY_H_

#include <cstdint>
#include <memory>
#include <string>

#include "riskaoi/qtable.h"
#include "riskaoi/rng.h"
#include "riskaoi/state.h"

namespace riskaoi {

// Send iff AoI_Rx - AoI_Tx >= n.
Action TbDecide(const AoIState& state, std::int64_t n);
// Send iff AoII >= theta; theta == 0 always sends.
Action AoIITbDecide(const AoIIState& state, std::int64_t theta);
// Send with probability send_prob. Consumes one draw from rng.
Action RandomDecide(RngStream& rng, double send_prob);
// Lowest Q-value wins; ties go to kWait.
Action GreedyDecide(const EnvState& state, const QTable& table);

// A stateless map from states to actions. Randomized policies draw from the
// stream handed in by the caller.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action Decide(const EnvState& state, RngStream& rng) const = 0;
  virtual std::string Name() const = 0;
};

class ThresholdPolicy final : public Policy {
 public:
  explicit ThresholdPolicy(std::int64_t n);
  Action Decide(const EnvState& state, RngStream& rng) const override;
  std::string Name() const override;
  std::int64_t n() const { return n_; }

 private:
  std::int64_t n_;
};

class AoIIThresholdPolicy final : public Policy {
 public:
  explicit AoIIThresholdPolicy(std::int64_t theta);
  Action Decide(const EnvState& state, RngStream& rng) const override;
  std::string Name() const override;
  std::int64_t theta() const { return theta_; }

 private:
  std::int64_t theta_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(double send_prob);
  Action Decide(const EnvState& state, RngStream& rng) const override;
  std::string Name() const override;

 private:
  double send_prob_;
};

class GreedyPolicy final : public Policy {
 public:
  explicit GreedyPolicy(std::shared_ptr<const QTable> table);
  Action Decide(const EnvState& state, RngStream& rng) const override;
  std::string Name() const override { return "greedy"; }
  const QTable& table() const { return *table_; }

 private:
  std::shared_ptr<const QTable> table_;
};

}  // namespace riskaoi

#endif  // RISKAOI_STRATEGY_H_
