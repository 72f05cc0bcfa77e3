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

#ifndef RISKAOI_QTABLE_H_
#define RISKAOI_QTABLE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "riskaoi/state.h"

namespace riskaoi {

// Tabular action values over a truncated state space.
//
// AoI / QAoI tables cover tx in {0..a_max} x rx in {1..a_max}; AoII tables
// cover the synced state plus mismatch ages {1..a_max}. States outside the
// domain are clamped onto its boundary, so lookups are total.
class QTable {
 public:
  QTable(Metric metric, std::int64_t a_max);

  Metric metric() const { return metric_; }
  std::int64_t a_max() const { return a_max_; }
  std::size_t num_states() const { return values_.size() / 2; }

  std::size_t StateIndex(const EnvState& state) const;

  double at(std::size_t state_index, Action action) const {
    return values_[2 * state_index + static_cast<std::size_t>(action)];
  }
  double& at(std::size_t state_index, Action action) {
    return values_[2 * state_index + static_cast<std::size_t>(action)];
  }
  double Value(const EnvState& state, Action action) const {
    return at(StateIndex(state), action);
  }

  std::span<const double> values() const { return values_; }

  // Text dump: a "# metric=<m> a_max=<n>" line, a CSV header, then one row
  // per (state, action) with the value printed to round-trip exactly.
  void Save(std::ostream& out) const;
  static QTable Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static QTable LoadFile(const std::string& path);

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  Metric metric_;
  std::int64_t a_max_;
  std::vector<double> values_;
};

}  // namespace riskaoi

#endif  // RISKAOI_QTABLE_H_
