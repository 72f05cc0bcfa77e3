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

#include "riskaoi/config.h"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "riskaoi/errors.h"

namespace riskaoi {

namespace {

constexpr std::array kKeys = {
    ConfigKey{"metric", "age-based metric: aoi | qaoi | aoii"},
    ConfigKey{"p", "probability of a successful transmission, (0, 1]"},
    ConfigKey{"lambda", "status-update arrival probability, (0, 1]"},
    ConfigKey{"nu", "energy per transmission attempt"},
    ConfigKey{"alpha", "weight on the age term"},
    ConfigKey{"beta", "weight on the energy term"},
    ConfigKey{"q", "query probability per step (QAoI)"},
    ConfigKey{"p_r", "probability the source stays in its state (AoII)"},
    ConfigKey{"num_states", "number of source states N (AoII)"},
    ConfigKey{"zeta", "safety value for AoI / QAoI risky states"},
    ConfigKey{"zeta_aoii", "safety value for AoII risky states"},
    ConfigKey{"rho", "risk factor applied to costs of risky transitions"},
    ConfigKey{"gamma", "discount factor of the learner, (0, 1)"},
    ConfigKey{"epsilon0", "initial exploration rate"},
    ConfigKey{"delta", "per-step exploration decay factor"},
    ConfigKey{"epsilon_min", "exploration floor"},
    ConfigKey{"learning_rate", "constant learning rate"},
    ConfigKey{"rate_schedule", "constant | visit (1/(1+visits)^rate_omega)"},
    ConfigKey{"rate_omega", "exponent of the visit-count schedule"},
    ConfigKey{"qaoi_strict_gating",
              "0 | 1: zero the whole QAoI cost on non-query steps"},
    ConfigKey{"a_max", "truncation bound of the Q-table"},
    ConfigKey{"learn_steps", "training iterations per learner"},
    ConfigKey{"test_steps", "evaluation steps per run"},
    ConfigKey{"runs", "independent runs per strategy"},
    ConfigKey{"seed", "base seed"},
    ConfigKey{"threshold", "n (aoi/qaoi) or theta (aoii); empty = auto"},
    ConfigKey{"workers", "worker threads; 0 = hardware concurrency"},
};

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw InvalidArgument("invalid value '" + std::string(value) +
                        "' for key '" + std::string(key) + "'");
}

double ToDouble(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    BadValue(key, value);
  }
  return v;
}

template <typename Int>
Int ToInt(std::string_view key, std::string_view value) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    BadValue(key, value);
  }
  return v;
}

// Accepts "1e5"-style spellings for step counts.
std::uint64_t ToCount(std::string_view key, std::string_view value) {
  if (value.find_first_of("eE.") == std::string_view::npos) {
    return ToInt<std::uint64_t>(key, value);
  }
  const double d = ToDouble(key, value);
  if (!(d >= 0.0) || d != static_cast<double>(static_cast<std::uint64_t>(d))) {
    BadValue(key, value);
  }
  return static_cast<std::uint64_t>(d);
}

bool ToBool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  BadValue(key, value);
}

// Shortest text that parses back to the same double.
std::string FormatDouble(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void ExperimentConfig::Validate() const {
  params.Validate();
  query.Validate();
  risk.Validate();
  SourceSpec(num_states, p_r);
  learning.Validate();
  if (runs < 1) throw InvalidArgument("runs must be at least 1");
  if (test_steps < 1) throw InvalidArgument("test_steps must be at least 1");
  if (threshold && *threshold < 0) {
    throw InvalidArgument("threshold must be nonnegative");
  }
}

EnvSpec ExperimentConfig::env_spec() const { return env_spec(metric); }

EnvSpec ExperimentConfig::env_spec(Metric m) const {
  EnvSpec spec;
  spec.metric = m;
  spec.params = params;
  spec.query = query;
  spec.source = SourceSpec(num_states, p_r);
  spec.risk = risk;
  return spec;
}

learning::LearningParams ExperimentConfig::learning_params(
    double rho, std::uint64_t steps) const {
  learning::LearningParams lp = learning;
  lp.rho = rho;
  lp.steps = steps;
  return lp;
}

std::span<const ConfigKey> ConfigKeys() { return kKeys; }

void SetConfigValue(ExperimentConfig& c, std::string_view key,
                    std::string_view raw) {
  const std::string value = Trim(raw);
  const std::string_view v = value;
  if (key == "metric") {
    c.metric = ParseMetric(v);
  } else if (key == "p") {
    c.params.p = ToDouble(key, v);
  } else if (key == "lambda") {
    c.params.lambda = ToDouble(key, v);
  } else if (key == "nu") {
    c.params.nu = ToDouble(key, v);
  } else if (key == "alpha") {
    c.params.alpha = ToDouble(key, v);
  } else if (key == "beta") {
    c.params.beta = ToDouble(key, v);
  } else if (key == "q") {
    c.query.q = ToDouble(key, v);
  } else if (key == "p_r") {
    c.p_r = ToDouble(key, v);
  } else if (key == "num_states") {
    c.num_states = ToInt<int>(key, v);
  } else if (key == "zeta") {
    c.risk.zeta = ToInt<std::int64_t>(key, v);
  } else if (key == "zeta_aoii") {
    c.risk.zeta_aoii = ToInt<std::int64_t>(key, v);
  } else if (key == "rho") {
    c.risk.rho = ToDouble(key, v);
    c.learning.rho = c.risk.rho;
  } else if (key == "gamma") {
    c.learning.gamma = ToDouble(key, v);
  } else if (key == "epsilon0") {
    c.learning.epsilon0 = ToDouble(key, v);
  } else if (key == "delta") {
    c.learning.delta = ToDouble(key, v);
  } else if (key == "epsilon_min") {
    c.learning.epsilon_min = ToDouble(key, v);
  } else if (key == "learning_rate") {
    c.learning.rate = ToDouble(key, v);
  } else if (key == "rate_schedule") {
    if (v == "constant") {
      c.learning.schedule = learning::RateSchedule::kConstant;
    } else if (v == "visit") {
      c.learning.schedule = learning::RateSchedule::kVisitCount;
    } else {
      BadValue(key, v);
    }
  } else if (key == "rate_omega") {
    c.learning.rate_omega = ToDouble(key, v);
  } else if (key == "qaoi_strict_gating") {
    c.learning.qaoi_strict_gating = ToBool(key, v);
  } else if (key == "a_max") {
    c.learning.a_max = ToInt<std::int64_t>(key, v);
  } else if (key == "learn_steps") {
    c.learn_steps = ToCount(key, v);
  } else if (key == "test_steps") {
    c.test_steps = ToCount(key, v);
  } else if (key == "runs") {
    c.runs = ToCount(key, v);
  } else if (key == "seed") {
    c.seed = ToInt<std::uint64_t>(key, v);
  } else if (key == "threshold") {
    if (v.empty()) {
      c.threshold.reset();
    } else {
      c.threshold = ToInt<std::int64_t>(key, v);
    }
  } else if (key == "workers") {
    c.workers = ToInt<unsigned>(key, v);
  } else {
    throw InvalidArgument("unknown configuration key '" + std::string(key) +
                          "'");
  }
}

std::string GetConfigValue(const ExperimentConfig& c, std::string_view key) {
  if (key == "metric") return std::string(MetricName(c.metric));
  if (key == "p") return FormatDouble(c.params.p);
  if (key == "lambda") return FormatDouble(c.params.lambda);
  if (key == "nu") return FormatDouble(c.params.nu);
  if (key == "alpha") return FormatDouble(c.params.alpha);
  if (key == "beta") return FormatDouble(c.params.beta);
  if (key == "q") return FormatDouble(c.query.q);
  if (key == "p_r") return FormatDouble(c.p_r);
  if (key == "num_states") return std::to_string(c.num_states);
  if (key == "zeta") return std::to_string(c.risk.zeta);
  if (key == "zeta_aoii") return std::to_string(c.risk.zeta_aoii);
  if (key == "rho") return FormatDouble(c.risk.rho);
  if (key == "gamma") return FormatDouble(c.learning.gamma);
  if (key == "epsilon0") return FormatDouble(c.learning.epsilon0);
  if (key == "delta") return FormatDouble(c.learning.delta);
  if (key == "epsilon_min") return FormatDouble(c.learning.epsilon_min);
  if (key == "learning_rate") return FormatDouble(c.learning.rate);
  if (key == "rate_schedule") {
    return c.learning.schedule == learning::RateSchedule::kConstant
               ? "constant"
               : "visit";
  }
  if (key == "rate_omega") return FormatDouble(c.learning.rate_omega);
  if (key == "qaoi_strict_gating") {
    return c.learning.qaoi_strict_gating ? "1" : "0";
  }
  if (key == "a_max") return std::to_string(c.learning.a_max);
  if (key == "learn_steps") return std::to_string(c.learn_steps);
  if (key == "test_steps") return std::to_string(c.test_steps);
  if (key == "runs") return std::to_string(c.runs);
  if (key == "seed") return std::to_string(c.seed);
  if (key == "threshold") {
    return c.threshold ? std::to_string(*c.threshold) : std::string();
  }
  if (key == "workers") return std::to_string(c.workers);
  throw InvalidArgument("unknown configuration key '" + std::string(key) +
                        "'");
}

void ParseConfigText(ExperimentConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": expected 'key = value'");
    }
    SetConfigValue(config, Trim(std::string_view(trimmed).substr(0, eq)),
                   std::string_view(trimmed).substr(eq + 1));
  }
}

void LoadConfigFile(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ParseConfigText(config, buf.str());
}

std::string DumpConfig(const ExperimentConfig& config) {
  std::string out;
  for (const ConfigKey& key : kKeys) {
    out += std::string(key.name) + " = " + GetConfigValue(config, key.name) +
           "\n";
  }
  return out;
}

}  // namespace riskaoi
