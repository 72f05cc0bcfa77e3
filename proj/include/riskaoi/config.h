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

#ifndef RISKAOI_CONFIG_H_
#define RISKAOI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "riskaoi/env.h"
#include "riskaoi/learning.h"

namespace riskaoi {

// Everything an experiment needs. Defaults reproduce the reference setup.
struct ExperimentConfig {
  Metric metric = Metric::kAoI;
  SystemParams params;
  QuerySpec query;
  int num_states = 10;
  double p_r = 0.5;
  RiskSpec risk;
  learning::LearningParams learning;
  std::uint64_t learn_steps = 100'000;
  std::uint64_t test_steps = 10'000;
  std::uint64_t runs = 100;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> threshold;  // n (AoI/QAoI) or theta (AoII)
  unsigned workers = 0;                   // 0: one per hardware thread

  void Validate() const;
  EnvSpec env_spec() const;
  EnvSpec env_spec(Metric m) const;
  learning::LearningParams learning_params(double rho,
                                           std::uint64_t steps) const;
};

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

// Every accepted key, in dump order.
std::span<const ConfigKey> ConfigKeys();

// Throws InvalidArgument on unknown keys or unparsable values.
void SetConfigValue(ExperimentConfig& config, std::string_view key,
                    std::string_view value);
std::string GetConfigValue(const ExperimentConfig& config,
                           std::string_view key);

// "key = value" lines; '#' starts a comment. Values already in `config` are
// overwritten only for keys present in the text.
void ParseConfigText(ExperimentConfig& config, std::string_view text);
void LoadConfigFile(ExperimentConfig& config, const std::string& path);
// Inverse of ParseConfigText: every key, one per line, in ConfigKeys order.
std::string DumpConfig(const ExperimentConfig& config);

}  // namespace riskaoi

#endif  // RISKAOI_CONFIG_H_
