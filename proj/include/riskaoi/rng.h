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

#ifndef RISKAOI_RNG_H_
#define RISKAOI_RNG_H_

#include <cstdint>
#include <random>

namespace riskaoi {

// Event families get disjoint streams so that a change of policy never
// shifts the sequence of any other event family.
enum class Substream : std::uint32_t {
  kArrival = 1,
  kChannel = 2,
  kQuery = 3,
  kSource = 4,
  kPolicy = 5,
  kExploration = 6,
};

class RngStream {
 public:
  RngStream(std::uint64_t seed, Substream stream);

  // Always consumes exactly one engine draw, including for prob 0 or 1.
  bool Bernoulli(double prob);
  double Uniform01();

 private:
  std::mt19937_64 engine_;
};

// Seed of the index-th run derived from a base seed.
std::uint64_t RunSeed(std::uint64_t base_seed, std::uint64_t index);

}  // namespace riskaoi

#endif  // RISKAOI_RNG_H_
