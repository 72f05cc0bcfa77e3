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

#include <memory>

#include "doctest.h"
#include "riskaoi/errors.h"
#include "riskaoi/qtable.h"
#include "riskaoi/strategy.h"

using namespace riskaoi;

TEST_CASE("threshold decisions") {
  CHECK(TbDecide({0, 5}, 2) == Action::kSend);
  CHECK(TbDecide({4, 5}, 2) == Action::kWait);
  CHECK(TbDecide({0, 2}, 2) == Action::kSend);
}

TEST_CASE("threshold decisions are monotone in the age difference") {
  for (std::int64_t n = 1; n <= 10; ++n) {
    bool sent = false;
    for (std::int64_t d = 0; d <= 20; ++d) {
      const bool s = TbDecide({3, 3 + d}, n) == Action::kSend;
      if (sent) CHECK(s);
      sent = sent || s;
      CHECK(s == (d >= n));
    }
  }
}

TEST_CASE("aoii threshold decisions") {
  CHECK(AoIITbDecide({false, 1}, 1) == Action::kSend);
  CHECK(AoIITbDecide({true, 0}, 1) == Action::kWait);
  for (std::int64_t a = 0; a < 10; ++a) {
    CHECK(AoIITbDecide({a == 0, a}, 0) == Action::kSend);
  }
}

TEST_CASE("random decisions") {
  RngStream rng(1, Substream::kPolicy);
  for (int i = 0; i < 1000; ++i) {
    CHECK(RandomDecide(rng, 0.0) == Action::kWait);
    CHECK(RandomDecide(rng, 1.0) == Action::kSend);
  }
  std::uint64_t sends = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    sends += RandomDecide(rng, 0.5) == Action::kSend;
  }
  CHECK(std::abs(sends / 1e6 - 0.5) <= 0.002);
}

TEST_CASE("greedy decisions pick the lower value and tie towards waiting") {
  QTable t(Metric::kAoI, 8);
  const std::size_t s = t.StateIndex(AoIState{1, 3});
  t.at(s, Action::kWait) = 1.0;
  t.at(s, Action::kSend) = 2.0;
  CHECK(GreedyDecide(AoIState{1, 3}, t) == Action::kWait);
  t.at(s, Action::kWait) = 2.0;
  t.at(s, Action::kSend) = 1.0;
  CHECK(GreedyDecide(AoIState{1, 3}, t) == Action::kSend);
  t.at(s, Action::kSend) = 2.0;
  CHECK(GreedyDecide(AoIState{1, 3}, t) == Action::kWait);
}

TEST_CASE("greedy decisions ignore a common shift of both values") {
  QTable t(Metric::kAoII, 16);
  RngStream rng(3, Substream::kPolicy);
  for (std::size_t s = 0; s < t.num_states(); ++s) {
    t.at(s, Action::kWait) = rng.Uniform01();
    t.at(s, Action::kSend) = rng.Uniform01();
  }
  QTable shifted = t;
  for (std::size_t s = 0; s < t.num_states(); ++s) {
    const double c = 10.0 * static_cast<double>(s) - 3.0;
    shifted.at(s, Action::kWait) += c;
    shifted.at(s, Action::kSend) += c;
  }
  for (std::int64_t a = 0; a <= 16; ++a) {
    const AoIIState st{a == 0, a};
    CHECK(GreedyDecide(st, t) == GreedyDecide(st, shifted));
  }
}

TEST_CASE("greedy decisions clamp states beyond the table") {
  QTable t(Metric::kAoI, 4);
  const std::size_t edge = t.StateIndex(AoIState{4, 4});
  t.at(edge, Action::kSend) = -1.0;
  CHECK(GreedyDecide(AoIState{50, 90}, t) == Action::kSend);
}

TEST_CASE("policy objects") {
  RngStream rng(1, Substream::kPolicy);
  ThresholdPolicy tb(2);
  CHECK(tb.Decide(AoIState{0, 5}, rng) == Action::kSend);
  CHECK(tb.Name() == "TB(2)");
  CHECK_THROWS_AS(ThresholdPolicy(0), InvalidArgument);
  CHECK_THROWS_AS(tb.Decide(AoIIState{false, 2}, rng), InvalidArgument);

  AoIIThresholdPolicy aoii(1);
  CHECK(aoii.Decide(AoIIState{false, 1}, rng) == Action::kSend);
  CHECK(aoii.Decide(AoIIState{true, 0}, rng) == Action::kWait);
  CHECK_THROWS_AS(AoIIThresholdPolicy(-1), InvalidArgument);

  CHECK_THROWS_AS(RandomPolicy(1.5), InvalidArgument);
  CHECK_THROWS_AS(GreedyPolicy(nullptr), InvalidArgument);

  auto table = std::make_shared<const QTable>(Metric::kAoI, 8);
  GreedyPolicy g(table);
  CHECK(g.Decide(AoIState{0, 7}, rng) == Action::kWait);  // all zero
}
