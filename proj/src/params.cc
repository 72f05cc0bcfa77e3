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

#include "riskaoi/params.h"

#include <cmath>
#include <string>

#include "riskaoi/errors.h"
#include "riskaoi/state.h"

namespace riskaoi {

namespace {

bool InUnitHalfOpen(double x) { return x > 0.0 && x <= 1.0; }

}  // namespace

void SystemParams::Validate() const {
  if (!InUnitHalfOpen(p)) {
    throw InvalidArgument("p must lie in (0, 1], got " + std::to_string(p));
  }
  if (!InUnitHalfOpen(lambda)) {
    throw InvalidArgument("lambda must lie in (0, 1], got " +
                          std::to_string(lambda));
  }
  if (!(nu >= 0.0) || !(alpha >= 0.0) || !(beta >= 0.0)) {
    throw InvalidArgument("nu, alpha and beta must be nonnegative");
  }
}

void QuerySpec::Validate() const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InvalidArgument("q must lie in [0, 1], got " + std::to_string(q));
  }
}

SourceSpec::SourceSpec(int num_states, double p_r)
    : num_states_(num_states), p_r_(p_r) {
  if (num_states < 2) {
    throw InvalidArgument("num_states must be at least 2");
  }
  if (!(p_r > 0.0 && p_r < 1.0)) {
    throw InvalidArgument("p_r must lie in (0, 1), got " +
                          std::to_string(p_r));
  }
  p_c_ = (1.0 - p_r) / static_cast<double>(num_states - 1);
}

void RiskSpec::Validate() const {
  if (zeta < 1 || zeta_aoii < 1) {
    throw InvalidArgument("safety values zeta and zeta_aoii must be >= 1");
  }
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw InvalidArgument("rho must be a finite nonnegative number");
  }
}

double StepCost(std::int64_t age, bool sent, const SystemParams& params) {
  const double age_term = params.alpha * static_cast<double>(age);
  return sent ? age_term + params.beta * params.nu : age_term;
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kAoI:
      return "aoi";
    case Metric::kQAoI:
      return "qaoi";
    case Metric::kAoII:
      return "aoii";
  }
  return "?";
}

Metric ParseMetric(std::string_view name) {
  if (name == "aoi") return Metric::kAoI;
  if (name == "qaoi") return Metric::kQAoI;
  if (name == "aoii") return Metric::kAoII;
  throw InvalidArgument("unknown metric '" + std::string(name) +
                        "' (expected aoi, qaoi or aoii)");
}

std::int64_t AgeOf(const EnvState& state) {
  if (const auto* aoi = std::get_if<AoIState>(&state)) return aoi->rx;
  return std::get<AoIIState>(state).aoii;
}

bool IsRiskyAoI(const AoIState& state, std::int64_t zeta) {
  return state.rx >= zeta;
}

bool IsRiskyAoII(const AoIIState& state, std::int64_t zeta_aoii) {
  return state.aoii >= zeta_aoii;
}

}  // namespace riskaoi
