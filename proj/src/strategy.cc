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

#include "riskaoi/strategy.h"

#include <cstdio>

#include "riskaoi/errors.h"

namespace riskaoi {

Action TbDecide(const AoIState& state, std::int64_t n) {
  return state.rx - state.tx >= n ? Action::kSend : Action::kWait;
}

Action AoIITbDecide(const AoIIState& state, std::int64_t theta) {
  return state.aoii >= theta ? Action::kSend : Action::kWait;
}

Action RandomDecide(RngStream& rng, double send_prob) {
  return rng.Bernoulli(send_prob) ? Action::kSend : Action::kWait;
}

Action GreedyDecide(const EnvState& state, const QTable& table) {
  const std::size_t idx = table.StateIndex(state);
  return table.at(idx, Action::kSend) < table.at(idx, Action::kWait)
             ? Action::kSend
             : Action::kWait;
}

ThresholdPolicy::ThresholdPolicy(std::int64_t n) : n_(n) {
  if (n < 1) throw InvalidArgument("threshold n must be at least 1");
}

Action ThresholdPolicy::Decide(const EnvState& state, RngStream&) const {
  const auto* s = std::get_if<AoIState>(&state);
  if (s == nullptr) {
    throw InvalidArgument("AoI threshold policy applied to an AoII state");
  }
  return TbDecide(*s, n_);
}

std::string ThresholdPolicy::Name() const {
  return "TB(" + std::to_string(n_) + ")";
}

AoIIThresholdPolicy::AoIIThresholdPolicy(std::int64_t theta) : theta_(theta) {
  if (theta < 0) throw InvalidArgument("AoII threshold must be nonnegative");
}

Action AoIIThresholdPolicy::Decide(const EnvState& state, RngStream&) const {
  const auto* s = std::get_if<AoIIState>(&state);
  if (s == nullptr) {
    throw InvalidArgument("AoII threshold policy applied to an AoI state");
  }
  return AoIITbDecide(*s, theta_);
}

std::string AoIIThresholdPolicy::Name() const {
  return "TB-AoII(" + std::to_string(theta_) + ")";
}

RandomPolicy::RandomPolicy(double send_prob) : send_prob_(send_prob) {
  if (!(send_prob >= 0.0 && send_prob <= 1.0)) {
    throw InvalidArgument("send probability must lie in [0, 1]");
  }
}

Action RandomPolicy::Decide(const EnvState&, RngStream& rng) const {
  return RandomDecide(rng, send_prob_);
}

std::string RandomPolicy::Name() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "random(%g)", send_prob_);
  return buf;
}

GreedyPolicy::GreedyPolicy(std::shared_ptr<const QTable> table)
    : table_(std::move(table)) {
  if (!table_) throw InvalidArgument("greedy policy needs a table");
}

Action GreedyPolicy::Decide(const EnvState& state, RngStream&) const {
  return GreedyDecide(state, *table_);
}

}  // namespace riskaoi
