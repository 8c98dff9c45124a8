// Copyright 2026 The Authors.
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

#ifndef SFMLB_RNG_H_
#define SFMLB_RNG_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sfmlb {

// splitmix64: state += 0x9E3779B97F4A7C15, then the standard xor-shift /
// multiply finalizer. Fixed here so that seeds reproduce across builds and
// across independent implementations of the same harness.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();
  // Uniform in [0, bound) by rejection on the low multiple; bound > 0.
  std::uint64_t Below(std::uint64_t bound);
  bool Bit() { return (Next() >> 63) != 0; }

  // count distinct items drawn uniformly from pool by a partial
  // Fisher-Yates shuffle; returned in draw order.
  std::vector<std::size_t> Choose(std::vector<std::size_t> pool,
                                  std::size_t count);

 private:
  std::uint64_t state_;
};

// Seed for trial index i of an experiment seeded with base: the (i+1)-th
// output of SplitMix64(base).
std::uint64_t TrialSeed(std::uint64_t base, std::uint64_t trial);

}  // namespace sfmlb

#endif  // SFMLB_RNG_H_
