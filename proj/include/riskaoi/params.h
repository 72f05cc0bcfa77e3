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

#ifndef RISKAOI_PARAMS_H_
#define RISKAOI_PARAMS_H_

#include <cstdint>

namespace riskaoi {

// Channel and cost constants shared by every age-based metric.
// Defaults are the reference simulation setup.
struct SystemParams {
  double p = 0.9;       // successful detection probability per attempt
  double lambda = 0.5;  // update arrival probability per step
  double nu = 1.0;      // energy per transmission attempt
  double alpha = 1.0;   // weight on the age term
  double beta = 3.0;    // weight on the energy term

  // Throws InvalidArgument unless 0 < p <= 1, 0 < lambda <= 1 and the
  // weights are nonnegative.
  void Validate() const;
};

struct QuerySpec {
  double q = 0.2;  // probability that a step is a query step

  void Validate() const;
};

// Symmetric N-state Markov source: stay with p_r, move to each other state
// with p_c so that p_r + (N - 1) p_c = 1.
class SourceSpec {
 public:
  SourceSpec() : SourceSpec(10, 0.5) {}
  SourceSpec(int num_states, double p_r);

  int num_states() const { return num_states_; }
  double p_r() const { return p_r_; }
  double p_c() const { return p_c_; }

 private:
  int num_states_;
  double p_r_;
  double p_c_;
};

struct RiskSpec {
  std::int64_t zeta = 5;       // safety value for AoI / QAoI
  std::int64_t zeta_aoii = 3;  // safety value for AoII
  double rho = 2.0;            // risk factor used by the learner

  void Validate() const;
};

// Per-step cost: alpha * age, plus beta * nu when a transmission was made.
double StepCost(std::int64_t age, bool sent, const SystemParams& params);

}  // namespace riskaoi

#endif  // RISKAOI_PARAMS_H_
