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

#include <map>
#include <utility>

#include "doctest.h"
#include "oracles.h"
#include "riskaoi/analytic.h"
#include "riskaoi/env.h"
#include "riskaoi/errors.h"
#include "riskaoi/strategy.h"

using namespace riskaoi;

namespace {

using AoIDist = std::map<std::pair<std::int64_t, std::int64_t>, double>;

// Next-state law written out case by case from the model description.
AoIDist ExpectedAoI(AoIState s, Action a, double lambda, double p) {
  AoIDist d;
  if (a == Action::kWait) {
    d[{0, s.rx + 1}] += lambda;
    d[{s.tx + 1, s.rx + 1}] += 1 - lambda;
  } else {
    d[{0, s.tx + 1}] += p * lambda;
    d[{s.tx + 1, s.tx + 1}] += p * (1 - lambda);
    d[{0, s.rx + 1}] += (1 - p) * lambda;
    d[{s.tx + 1, s.rx + 1}] += (1 - p) * (1 - lambda);
  }
  return d;
}

EnvSpec Spec(Metric m) {
  EnvSpec s;
  s.metric = m;
  return s;
}

}  // namespace

TEST_CASE("aoi kernel examples") {
  CHECK(AoIKernel({3, 7}, Action::kWait, true, false) == AoIState{0, 8});
  CHECK(AoIKernel({3, 7}, Action::kSend, false, true) == AoIState{4, 4});
  CHECK(AoIKernel({0, 1}, Action::kSend, true, true) == AoIState{0, 1});
  // success is ignored while waiting
  CHECK(AoIKernel({3, 7}, Action::kWait, false, true) == AoIState{4, 8});
}

TEST_CASE("aoii kernel examples") {
  CHECK(AoIIKernel({true, 0}, Action::kWait, false, false) ==
        AoIIState{false, 1});
  CHECK(AoIIKernel({false, 3}, Action::kSend, false, true) ==
        AoIIState{true, 0});
  CHECK(AoIIKernel({false, 3}, Action::kWait, false, false) ==
        AoIIState{false, 4});
  CHECK(AoIIKernel({false, 3}, Action::kWait, true, false) ==
        AoIIState{true, 0});
  CHECK(AoIIKernel({true, 0}, Action::kSend, false, true) ==
        AoIIState{true, 0});
}

TEST_CASE("aoi kernel normalization by event enumeration") {
  for (double lambda : {0.3, 0.5, 1.0}) {
    for (double p : {0.5, 0.9, 1.0}) {
      for (std::int64_t rx = 1; rx <= 9; ++rx) {
        for (std::int64_t tx = 0; tx < rx; ++tx) {
          for (Action a : {Action::kWait, Action::kSend}) {
            AoIDist got;
            double total = 0.0;
            for (bool arrival : {false, true}) {
              const double pa = arrival ? lambda : 1 - lambda;
              if (a == Action::kWait) {
                const AoIState n = AoIKernel({tx, rx}, a, arrival, false);
                got[{n.tx, n.rx}] += pa;
                total += pa;
                continue;
              }
              for (bool ok : {false, true}) {
                const double pe = pa * (ok ? p : 1 - p);
                const AoIState n = AoIKernel({tx, rx}, a, arrival, ok);
                got[{n.tx, n.rx}] += pe;
                total += pe;
              }
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
            const AoIDist want = ExpectedAoI({tx, rx}, a, lambda, p);
            for (const auto& [st, prob] : want) {
              CHECK(got[st] == doctest::Approx(prob).epsilon(1e-15));
            }
            for (const auto& [st, prob] : got) {
              CHECK(want.count(st) == 1);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("aoii kernel normalization by event enumeration") {
  const SourceSpec src(10, 0.5);
  const double p = 0.9;
  for (std::int64_t a = 0; a <= 6; ++a) {
    const AoIIState s{a == 0, a};
    const double ev = s.synced ? src.p_r() : src.p_c();
    for (Action act : {Action::kWait, Action::kSend}) {
      double to_sync = 0.0, to_next = 0.0;
      for (bool e : {false, true}) {
        for (bool ok : {false, true}) {
          const double pr = (e ? ev : 1 - ev) *
                            (act == Action::kSend ? (ok ? p : 1 - p)
                                                  : (ok ? 0.0 : 1.0));
          const AoIIState n = AoIIKernel(s, act, e, ok);
          if (n.synced) {
            CHECK(n.aoii == 0);
            to_sync += pr;
          } else {
            CHECK(n.aoii == s.aoii + 1);
            to_next += pr;
          }
        }
      }
      const double want = act == Action::kSend ? ev + p * (1 - ev) : ev;
      CHECK(to_sync == doctest::Approx(want).epsilon(1e-15));
      CHECK(to_sync + to_next == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("deterministic limit: sending resets the receiver age") {
  EnvSpec s = Spec(Metric::kAoI);
  s.params.lambda = 1.0;
  s.params.p = 1.0;
  Environment env(s, 1);
  for (int i = 0; i < 4; ++i) env.Step(Action::kWait);
  CHECK(std::get<AoIState>(env.state()) == AoIState{0, 5});
  const StepOutcome o = env.Step(Action::kSend);
  CHECK(std::get<AoIState>(o.next_state) == AoIState{0, 1});
  CHECK(o.success);
  CHECK(o.sent);
  CHECK(o.cost == 4.0);
}

TEST_CASE("qaoi with q = 0 never queries and charges energy only") {
  EnvSpec s = Spec(Metric::kQAoI);
  s.query.q = 0.0;
  Environment env(s, 3);
  RandomPolicy coin(0.5);
  for (int i = 0; i < 5000; ++i) {
    const Action a = coin.Decide(env.state(), env.policy_rng());
    const StepOutcome o = env.Step(a);
    CHECK_FALSE(o.query);
    CHECK_FALSE(o.risky);
    CHECK(o.cost == (o.sent ? 3.0 : 0.0));
  }
}

TEST_CASE("qaoi risk requires a query step") {
  EnvSpec s = Spec(Metric::kQAoI);
  s.query.q = 0.5;
  Environment env(s, 11);
  std::uint64_t queries = 0;
  for (int i = 0; i < 200; ++i) {
    const StepOutcome o = env.Step(Action::kWait);
    const auto rx = std::get<AoIState>(o.next_state).rx;
    CHECK(o.risky == (o.query && rx >= 5));
    CHECK(o.cost == (o.query ? static_cast<double>(rx) : 0.0));
  }
  // Query draws are a fair coin here.
  Environment env2(s, 12);
  for (int i = 0; i < 100000; ++i) queries += env2.Step(Action::kSend).query;
  CHECK(static_cast<double>(queries) / 100000.0 ==
        doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("replay determinism over 1000 steps") {
  for (Metric m : {Metric::kAoI, Metric::kQAoI, Metric::kAoII}) {
    Environment a(Spec(m), 42), b(Spec(m), 42);
    RandomPolicy coin(0.4);
    for (int i = 0; i < 1000; ++i) {
      const Action x = coin.Decide(a.state(), a.policy_rng());
      const Action y = coin.Decide(b.state(), b.policy_rng());
      REQUIRE(x == y);
      const StepOutcome oa = a.Step(x), ob = b.Step(y);
      CHECK(oa.next_state == ob.next_state);
      CHECK(oa.cost == ob.cost);
      CHECK(oa.risky == ob.risky);
      CHECK(oa.query == ob.query);
      CHECK(oa.success == ob.success);
    }
  }
}

TEST_CASE("event streams do not depend on the actions taken") {
  // The arrival sequence shows up in tx resets, which actions cannot alter.
  Environment a(Spec(Metric::kAoI), 9), b(Spec(Metric::kAoI), 9);
  for (int i = 0; i < 2000; ++i) {
    const auto oa = a.Step(Action::kWait);
    const auto ob = b.Step(i % 3 == 0 ? Action::kSend : Action::kWait);
    CHECK((std::get<AoIState>(oa.next_state).tx == 0) ==
          (std::get<AoIState>(ob.next_state).tx == 0));
  }
}

TEST_CASE("receiver age increments except on successful sends") {
  Environment env(Spec(Metric::kAoI), 5);
  RandomPolicy coin(0.5);
  for (int i = 0; i < 20000; ++i) {
    const AoIState before = std::get<AoIState>(env.state());
    const StepOutcome o = env.Step(coin.Decide(env.state(), env.policy_rng()));
    const AoIState after = std::get<AoIState>(o.next_state);
    if (o.success) {
      CHECK(after.rx == before.tx + 1);
    } else {
      CHECK(after.rx == before.rx + 1);
    }
    CHECK(after.tx <= after.rx);
  }
}

TEST_CASE("aoii resets exactly when the receiver matches after the step") {
  Environment env(Spec(Metric::kAoII), 8);
  CHECK(std::get<AoIIState>(env.state()) == AoIIState{true, 0});
  RandomPolicy coin(0.3);
  std::uint64_t synced_wait = 0, synced_stay = 0, mis_wait = 0, mis_back = 0;
  for (int i = 0; i < 400000; ++i) {
    const AoIIState before = std::get<AoIIState>(env.state());
    const Action a = coin.Decide(env.state(), env.policy_rng());
    const StepOutcome o = env.Step(a);
    const AoIIState after = std::get<AoIIState>(o.next_state);
    CHECK(after.synced == (after.aoii == 0));
    if (!after.synced) CHECK(after.aoii == before.aoii + 1);
    if (o.success) CHECK(after.synced);
    if (a == Action::kWait) {
      if (before.synced) {
        ++synced_wait;
        synced_stay += after.synced;
      } else {
        ++mis_wait;
        mis_back += after.synced;
      }
    }
  }
  CHECK(static_cast<double>(synced_stay) / synced_wait ==
        doctest::Approx(0.5).epsilon(0.02));
  CHECK(static_cast<double>(mis_back) / mis_wait ==
        doctest::Approx(0.5 / 9).epsilon(0.05));
}

TEST_CASE("stepping past the horizon is a usage error") {
  Environment env(Spec(Metric::kAoI), 1, 3);
  for (int i = 0; i < 3; ++i) env.Step(Action::kWait);
  CHECK(env.finished());
  CHECK_THROWS_AS(env.Step(Action::kWait), UsageError);
  Environment env2(Spec(Metric::kAoI), 1);
  ThresholdPolicy tb(2);
  CHECK_THROWS_AS(RunPolicy(env2, tb, 0), InvalidArgument);
}

TEST_CASE("always-send in the deterministic limit costs alpha + beta nu") {
  EnvSpec s = Spec(Metric::kAoI);
  s.params.lambda = 1.0;
  s.params.p = 1.0;
  Environment env(s, 1);
  ThresholdPolicy always(1);
  const TrajectoryStats t = RunPolicy(env, always, 10000);
  CHECK(t.average_cost() == 4.0);
  CHECK(t.send_rate() == 1.0);
  CHECK(t.risky_frequency() == 0.0);
}

TEST_CASE("never sending drives the risky frequency towards one") {
  Environment env(Spec(Metric::kAoI), 1);
  RandomPolicy never(0.0);
  const TrajectoryStats t = RunPolicy(env, never, 10000);
  CHECK(t.risky_frequency() == doctest::Approx((10000.0 - 3) / 10000.0));
  CHECK(t.sends == 0);
}

TEST_CASE("threshold policy simulation agrees with an independent simulator") {
  // Same model, different code and random engine: averages must agree.
  const SystemParams sp;
  Environment env(Spec(Metric::kAoI), 2024);
  ThresholdPolicy tb(2);
  const TrajectoryStats t = RunPolicy(env, tb, 1'000'000);
  const oracle::TbSample o =
      oracle::SimulateTb(2, sp.lambda, sp.p, sp.alpha, sp.beta * sp.nu,
                         1'000'000, 77);
  CHECK(t.average_cost() ==
        doctest::Approx(o.total_cost / o.steps).epsilon(0.01));
  for (std::int64_t k = 1; k <= 8; ++k) {
    const double want = o.Occupancy(k);
    CHECK(std::abs(t.OccupancyFrequency(k) - want) <=
          std::max(0.003, 0.05 * want));
  }
}

TEST_CASE("threshold policy simulation matches the closed-form cost") {
  const SystemParams sp;
  Environment env(Spec(Metric::kAoI), 7);
  ThresholdPolicy tb(2);
  const TrajectoryStats t = RunPolicy(env, tb, 1'000'000);
  CHECK(t.average_cost() ==
        doctest::Approx(analytic::TbCostAoI(2, sp)).epsilon(0.02));
}
