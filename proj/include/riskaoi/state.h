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

#ifndef RISKAOI_STATE_H_
#define RISKAOI_STATE_H_

#include <cstdint>
#include <string_view>
#include <variant>

namespace riskaoi {

enum class Metric : std::uint8_t { kAoI, kQAoI, kAoII };

std::string_view MetricName(Metric metric);
// Parses "aoi", "qaoi" or "aoii"; throws InvalidArgument otherwise.
Metric ParseMetric(std::string_view name);

enum class Action : std::uint8_t { kWait = 0, kSend = 1 };

// (AoI at the sender, AoI at the receiver). A fresh system starts at (0, 1).
struct AoIState {
  std::int64_t tx = 0;
  std::int64_t rx = 1;

  friend bool operator==(const AoIState&, const AoIState&) = default;
};

// (receiver matches the process, AoII). synced implies aoii == 0.
struct AoIIState {
  bool synced = true;
  std::int64_t aoii = 0;

  friend bool operator==(const AoIIState&, const AoIIState&) = default;
};

using EnvState = std::variant<AoIState, AoIIState>;

// The age value that enters the cost: AoI_Rx or AoII.
std::int64_t AgeOf(const EnvState& state);

bool IsRiskyAoI(const AoIState& state, std::int64_t zeta);
bool IsRiskyAoII(const AoIIState& state, std::int64_t zeta_aoii);

}  // namespace riskaoi

#endif  // RISKAOI_STATE_H_
