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

#include "riskaoi/qtable.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "riskaoi/errors.h"

namespace riskaoi {

namespace {

std::string FormatValue(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

std::int64_t ParseInt(const std::string& s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("qtable: bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

QTable::QTable(Metric metric, std::int64_t a_max)
    : metric_(metric), a_max_(a_max) {
  if (a_max < 1) throw InvalidArgument("a_max must be at least 1");
  const auto n = static_cast<std::size_t>(a_max);
  const std::size_t states =
      metric == Metric::kAoII ? n + 1 : (n + 1) * n;
  values_.assign(2 * states, 0.0);
}

std::size_t QTable::StateIndex(const EnvState& state) const {
  if (metric_ == Metric::kAoII) {
    const auto* s = std::get_if<AoIIState>(&state);
    if (s == nullptr) throw InvalidArgument("AoII table given an AoI state");
    if (s->synced) return 0;
    return static_cast<std::size_t>(std::clamp<std::int64_t>(s->aoii, 1, a_max_));
  }
  const auto* s = std::get_if<AoIState>(&state);
  if (s == nullptr) throw InvalidArgument("AoI table given an AoII state");
  const auto tx = std::clamp<std::int64_t>(s->tx, 0, a_max_);
  const auto rx = std::clamp<std::int64_t>(s->rx, 1, a_max_);
  return static_cast<std::size_t>(tx * a_max_ + (rx - 1));
}

void QTable::Save(std::ostream& out) const {
  out << "# metric=" << MetricName(metric_) << " a_max=" << a_max_ << '\n';
  const char* names[2] = {"wait", "send"};
  if (metric_ == Metric::kAoII) {
    out << "synced,aoii,action,q_value\n";
    for (int a = 0; a < 2; ++a) {
      out << "1,0," << names[a] << ',' << FormatValue(at(0, Action(a)))
          << '\n';
    }
    for (std::int64_t x = 1; x <= a_max_; ++x) {
      for (int a = 0; a < 2; ++a) {
        out << "0," << x << ',' << names[a] << ','
            << FormatValue(at(static_cast<std::size_t>(x), Action(a))) << '\n';
      }
    }
    return;
  }
  out << "tx,rx,action,q_value\n";
  for (std::int64_t tx = 0; tx <= a_max_; ++tx) {
    for (std::int64_t rx = 1; rx <= a_max_; ++rx) {
      const std::size_t idx = StateIndex(AoIState{tx, rx});
      for (int a = 0; a < 2; ++a) {
        out << tx << ',' << rx << ',' << names[a] << ','
            << FormatValue(at(idx, Action(a))) << '\n';
      }
    }
  }
}

QTable QTable::Load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# metric=", 0) != 0) {
    throw InvalidArgument("qtable: missing '# metric=' preamble");
  }
  std::istringstream pre(line.substr(9));
  std::string metric_name, amax_field;
  pre >> metric_name >> amax_field;
  if (amax_field.rfind("a_max=", 0) != 0) {
    throw InvalidArgument("qtable: missing a_max in preamble");
  }
  QTable table(ParseMetric(metric_name), ParseInt(amax_field.substr(6)));
  if (!std::getline(in, line)) throw InvalidArgument("qtable: missing header");

  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = SplitCsv(line);
    if (f.size() != 4) {
      throw InvalidArgument("qtable: expected 4 fields in '" + line + "'");
    }
    Action action;
    if (f[2] == "wait") {
      action = Action::kWait;
    } else if (f[2] == "send") {
      action = Action::kSend;
    } else {
      throw InvalidArgument("qtable: bad action '" + f[2] + "'");
    }
    EnvState state;
    if (table.metric() == Metric::kAoII) {
      state = AoIIState{ParseInt(f[0]) == 1, ParseInt(f[1])};
    } else {
      state = AoIState{ParseInt(f[0]), ParseInt(f[1])};
    }
    table.at(table.StateIndex(state), action) = std::stod(f[3]);
    ++rows;
  }
  if (rows != table.values_.size()) {
    throw InvalidArgument("qtable: expected " +
                          std::to_string(table.values_.size()) +
                          " rows, found " + std::to_string(rows));
  }
  return table;
}

void QTable::SaveFile(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  Save(out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

QTable QTable::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return Load(in);
}

}  // namespace riskaoi
