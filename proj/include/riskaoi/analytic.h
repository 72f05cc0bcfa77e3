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

#ifndef RISKAOI_ANALYTIC_H_
#define RISKAOI_ANALYTIC_H_

// Closed-form evaluation of the threshold policy TB(n) for AoI and QAoI.
//
// The derivation splits time into periods between consecutive successful
// transmissions. r0, the receiver age at the first step of a period, is
// distributed as w_r; the mean period length is l; a period starting at
// r0 = r contributes (w_r / l) * (a(max(r, n)) - r (r - 1) / 2) to the
// average age. Everything below is a pure function of its arguments.

#include <cstdint>
#include <map>
#include <optional>

#include "riskaoi/params.h"

namespace riskaoi::analytic {

// Truncation of the infinite sums. A sum stops once at least `min_terms`
// terms past its natural start have been added and the latest term is below
// tail_tol times the running total. More than `max_terms` terms throws
// NonConvergent.
struct Tolerance {
  double tail_tol = 1e-12;
  std::int64_t min_terms = 10;
  std::int64_t max_terms = 10'000'000;
};

// P(r0 = r) = ((1-lambda)(1-p))^(r-1) - ((1-lambda)(1-p))^r, r >= 1.
double WeightW(std::int64_t r, const SystemParams& params);

// a(n) = (n-2)/lambda + (n-2)/p + (n-2)(n-1)/2 + 1/lambda^2 + 1/(lambda p)
//        + 1/p^2
double AOf(std::int64_t n, const SystemParams& params);

// l = (1-p)/p + 1 + (1-lambda)/lambda + sum_{r=1}^{n-1} w_r (n - r)
double PeriodLength(std::int64_t n, const SystemParams& params);

// Mean number of attempts per period, 1/p.
double AttemptsPerPeriod(const SystemParams& params);

// Intermediate quantities of the cost formula, kept for inspection.
struct CostBreakdown {
  double age_cost = 0.0;     // AAC_n, already scaled by q for QAoI
  double energy_cost = 0.0;  // AEC_n = beta nu m / l
  double period_length = 0.0;
  double attempts_per_period = 0.0;
  double age_sum = 0.0;  // sum_r w_r (a(max(r,n)) - r(r-1)/2)
  std::int64_t terms = 0;

  double total() const { return age_cost + energy_cost; }
};

CostBreakdown TbCostBreakdown(std::int64_t n, const SystemParams& params,
                              double q = 1.0, const Tolerance& tol = {});

// Long-run average cost of TB(n) for AoI.
double TbCostAoI(std::int64_t n, const SystemParams& params,
                 const Tolerance& tol = {});

// QAoI variant: q scales the age term only.
double TbCostQAoI(std::int64_t n, const SystemParams& params, double q,
                  const Tolerance& tol = {});

// Probability that a period starting at receiver age r reaches age k > n.
double SurvivalP(std::int64_t r, std::int64_t k, std::int64_t n,
                 const SystemParams& params);

// Long-run frequency of AoI_Rx == k for k > n.
double FreqK(std::int64_t k, std::int64_t n, const SystemParams& params);

// sum_{k >= zeta} f_k, times q when a query probability is given. Requires
// zeta > n; throws Inapplicable otherwise.
double RiskyFrequency(std::int64_t n, std::int64_t zeta,
                      const SystemParams& params, const Tolerance& tol = {},
                      std::optional<double> q = std::nullopt);

struct AnalyticResult {
  std::int64_t n = 0;
  double cost = 0.0;
  double period_length = 0.0;
  double attempts_per_period = 0.0;
  std::map<std::int64_t, double> freq;   // f_k for n < k <= k_display
  std::optional<double> risky_frequency;  // empty when zeta <= n
};

AnalyticResult EvaluateThreshold(std::int64_t n, const SystemParams& params,
                                 std::int64_t zeta,
                                 std::optional<double> q = std::nullopt,
                                 std::int64_t k_display = 12,
                                 const Tolerance& tol = {});

// Cost-minimal n in [1, n_max]. The scan stops after the cost has risen on
// two consecutive thresholds; ties go to the smaller n. Pass q to optimize
// the QAoI cost.
std::int64_t OptimalThreshold(const SystemParams& params, std::int64_t n_max,
                              std::optional<double> q = std::nullopt,
                              const Tolerance& tol = {});

// Cheapest n with RiskyFrequency(n, zeta) <= budget among n in
// [1, min(n_max, zeta - 1)]. Throws Infeasible, carrying the smallest
// achievable risk, when no candidate meets the budget.
std::int64_t RiskConstrainedThreshold(double budget, std::int64_t zeta,
                                      const SystemParams& params,
                                      std::int64_t n_max,
                                      std::optional<double> q = std::nullopt,
                                      const Tolerance& tol = {});

}  // namespace riskaoi::analytic

#endif  // RISKAOI_ANALYTIC_H_
