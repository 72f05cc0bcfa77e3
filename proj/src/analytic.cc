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

#include "riskaoi/analytic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "riskaoi/errors.h"

namespace riskaoi::analytic {

namespace {

void CheckParams(const SystemParams& params) { params.Validate(); }

void CheckThreshold(std::int64_t n) {
  if (n < 1) {
    throw InvalidArgument("threshold n must be at least 1, got " +
                          std::to_string(n));
  }
}

void CheckQuery(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InvalidArgument("q must lie in [0, 1]");
  }
}

double FailRatio(const SystemParams& params) {
  return (1.0 - params.lambda) * (1.0 - params.p);
}

// S[m] = 1 - p lambda sum_{i=0}^{m-1} sum_{j=0}^{i} (1-lambda)^j (1-p)^(i-j),
// the chance that no success happens during the first m steps of a period
// that is already past its waiting phase. Grows on demand.
class SurvivalSeries {
 public:
  explicit SurvivalSeries(const SystemParams& params)
      : x_(1.0 - params.lambda),
        y_(1.0 - params.p),
        scale_(params.p * params.lambda) {
    values_.push_back(1.0);
  }

  double at(std::int64_t m) {
    while (static_cast<std::int64_t>(values_.size()) <= m) {
      // inner_ currently holds g(i-1); g(i) = y g(i-1) + x^i.
      const auto i = static_cast<std::int64_t>(values_.size()) - 1;
      inner_ = (i == 0) ? 1.0 : y_ * inner_ + x_pow_;
      outer_ += inner_;
      x_pow_ *= x_;
      values_.push_back(std::clamp(1.0 - scale_ * outer_, 0.0, 1.0));
    }
    return values_[static_cast<std::size_t>(m)];
  }

 private:
  double x_, y_, scale_;
  double inner_ = 0.0;
  double outer_ = 0.0;
  double x_pow_ = 1.0;  // x^i for the next i
  std::vector<double> values_;
};

double FreqKWith(std::int64_t k, std::int64_t n, const SystemParams& params,
                 SurvivalSeries& survival, double head_weight, double l) {
  double acc = WeightW(k, params) + survival.at(k - n) * head_weight;
  for (std::int64_t r = n + 1; r <= k - 1; ++r) {
    acc += WeightW(r, params) * survival.at(k - r);
  }
  return acc / l;
}

double HeadWeight(std::int64_t n, const SystemParams& params) {
  double s = 0.0;
  for (std::int64_t r = 1; r <= n; ++r) s += WeightW(r, params);
  return s;
}

}  // namespace

double WeightW(std::int64_t r, const SystemParams& params) {
  if (r < 1) throw InvalidArgument("w_r requires r >= 1");
  const double g = FailRatio(params);
  const double head = std::pow(g, static_cast<double>(r - 1));
  return head - head * g;
}

double AOf(std::int64_t n, const SystemParams& params) {
  const double lam = params.lambda;
  const double p = params.p;
  const double m = static_cast<double>(n - 2);
  return m / lam + m / p + m * static_cast<double>(n - 1) / 2.0 +
         1.0 / (lam * lam) + 1.0 / (lam * p) + 1.0 / (p * p);
}

double PeriodLength(std::int64_t n, const SystemParams& params) {
  CheckThreshold(n);
  CheckParams(params);
  const double lam = params.lambda;
  const double p = params.p;
  double l = (1.0 - p) / p + 1.0 + (1.0 - lam) / lam;
  for (std::int64_t r = 1; r <= n - 1; ++r) {
    l += WeightW(r, params) * static_cast<double>(n - r);
  }
  return l;
}

double AttemptsPerPeriod(const SystemParams& params) {
  if (!(params.p > 0.0)) throw InvalidArgument("p must be positive");
  return 1.0 / params.p;
}

CostBreakdown TbCostBreakdown(std::int64_t n, const SystemParams& params,
                              double q, const Tolerance& tol) {
  CheckThreshold(n);
  CheckParams(params);
  CheckQuery(q);
  if (!(tol.tail_tol > 0.0)) throw InvalidArgument("tail_tol must be > 0");

  auto triangular = [](std::int64_t r) {
    return static_cast<double>(r) * static_cast<double>(r - 1) / 2.0;
  };

  CostBreakdown out;
  const double a_n = AOf(n, params);
  double sum = 0.0;
  for (std::int64_t r = 1; r <= n; ++r) {
    sum += WeightW(r, params) * (a_n - triangular(r));
  }
  std::int64_t terms = n;
  for (std::int64_t r = n + 1;; ++r) {
    const double term = WeightW(r, params) * (AOf(r, params) - triangular(r));
    sum += term;
    ++terms;
    if (r - n >= tol.min_terms &&
        std::abs(term) <= tol.tail_tol * std::abs(sum)) {
      break;
    }
    if (terms > tol.max_terms) {
      throw NonConvergent("cost series for n=" + std::to_string(n) +
                          " did not converge within " +
                          std::to_string(tol.max_terms) + " terms");
    }
  }

  out.period_length = PeriodLength(n, params);
  out.attempts_per_period = AttemptsPerPeriod(params);
  out.age_sum = sum;
  out.terms = terms;
  out.age_cost = q * params.alpha * sum / out.period_length;
  out.energy_cost =
      params.beta * params.nu * out.attempts_per_period / out.period_length;
  return out;
}

double TbCostAoI(std::int64_t n, const SystemParams& params,
                 const Tolerance& tol) {
  return TbCostBreakdown(n, params, 1.0, tol).total();
}

double TbCostQAoI(std::int64_t n, const SystemParams& params, double q,
                  const Tolerance& tol) {
  return TbCostBreakdown(n, params, q, tol).total();
}

double SurvivalP(std::int64_t r, std::int64_t k, std::int64_t n,
                 const SystemParams& params) {
  CheckThreshold(n);
  CheckParams(params);
  if (k <= n) {
    throw Inapplicable("survival probability is only defined for k > n");
  }
  if (r < 1) throw InvalidArgument("r must be at least 1");
  if (r > k) return 0.0;
  if (r == k) return 1.0;
  const std::int64_t start = std::max(r, n);
  SurvivalSeries survival(params);
  return survival.at(k - start);
}

double FreqK(std::int64_t k, std::int64_t n, const SystemParams& params) {
  CheckThreshold(n);
  CheckParams(params);
  if (k <= n) {
    throw Inapplicable("f_k is only available for k > n (k=" +
                       std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  SurvivalSeries survival(params);
  return FreqKWith(k, n, params, survival, HeadWeight(n, params),
                   PeriodLength(n, params));
}

double RiskyFrequency(std::int64_t n, std::int64_t zeta,
                      const SystemParams& params, const Tolerance& tol,
                      std::optional<double> q) {
  CheckThreshold(n);
  CheckParams(params);
  if (q) CheckQuery(*q);
  if (zeta <= n) {
    throw Inapplicable(
        "analytic risky-state frequency requires zeta > n (zeta=" +
        std::to_string(zeta) + ", n=" + std::to_string(n) +
        "); estimate it by simulation instead");
  }
  SurvivalSeries survival(params);
  const double head = HeadWeight(n, params);
  const double l = PeriodLength(n, params);
  double acc = 0.0;
  for (std::int64_t k = zeta;; ++k) {
    const double f = FreqKWith(k, n, params, survival, head, l);
    acc += f;
    if (k - zeta >= tol.min_terms && f <= tol.tail_tol * acc) break;
    if (k - zeta > tol.max_terms) {
      throw NonConvergent("risky-frequency series did not converge");
    }
  }
  return q ? *q * acc : acc;
}

AnalyticResult EvaluateThreshold(std::int64_t n, const SystemParams& params,
                                 std::int64_t zeta, std::optional<double> q,
                                 std::int64_t k_display,
                                 const Tolerance& tol) {
  AnalyticResult out;
  out.n = n;
  const CostBreakdown cost = TbCostBreakdown(n, params, q.value_or(1.0), tol);
  out.cost = cost.total();
  out.period_length = cost.period_length;
  out.attempts_per_period = cost.attempts_per_period;

  SurvivalSeries survival(params);
  const double head = HeadWeight(n, params);
  for (std::int64_t k = n + 1; k <= k_display; ++k) {
    out.freq[k] = FreqKWith(k, n, params, survival, head, cost.period_length);
  }
  if (zeta > n) out.risky_frequency = RiskyFrequency(n, zeta, params, tol, q);
  return out;
}

std::int64_t OptimalThreshold(const SystemParams& params, std::int64_t n_max,
                              std::optional<double> q, const Tolerance& tol) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  std::int64_t best_n = 1;
  double best = TbCostQAoI(1, params, q.value_or(1.0), tol);
  double prev = best;
  int rises = 0;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const double c = TbCostQAoI(n, params, q.value_or(1.0), tol);
    if (c < best) {
      best = c;
      best_n = n;
    }
    rises = c > prev ? rises + 1 : 0;
    if (rises >= 2) break;
    prev = c;
  }
  return best_n;
}

std::int64_t RiskConstrainedThreshold(double budget, std::int64_t zeta,
                                      const SystemParams& params,
                                      std::int64_t n_max,
                                      std::optional<double> q,
                                      const Tolerance& tol) {
  if (!(budget >= 0.0)) throw InvalidArgument("risk budget must be >= 0");
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  const std::int64_t last = std::min(n_max, zeta - 1);
  if (last < 1) {
    throw Inapplicable("no threshold n < zeta=" + std::to_string(zeta) +
                       " to choose from");
  }
  std::optional<std::int64_t> best_n;
  double best_cost = std::numeric_limits<double>::infinity();
  double min_risk = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= last; ++n) {
    const double risk = RiskyFrequency(n, zeta, params, tol, q);
    min_risk = std::min(min_risk, risk);
    if (risk > budget) continue;
    const double c = TbCostQAoI(n, params, q.value_or(1.0), tol);
    if (c < best_cost) {
      best_cost = c;
      best_n = n;
    }
  }
  if (!best_n) {
    throw Infeasible("no threshold meets risk budget " +
                         std::to_string(budget) +
                         "; smallest achievable risky frequency is " +
                         std::to_string(min_risk),
                     min_risk);
  }
  return *best_n;
}

}  // namespace riskaoi::analytic
