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

#include "sfmlb/rng.h"

#include <utility>

#include "sfmlb/errors.h"

namespace sfmlb {

std::uint64_t SplitMix64::Next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::Below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("Below(0)");
  // Rejects the (2^64 mod bound) lowest outputs.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = Next();
    if (x >= threshold) return x % bound;
  }
}

std::vector<std::size_t> SplitMix64::Choose(std::vector<std::size_t> pool,
                                            std::size_t count) {
  if (count > pool.size()) throw UsageError("Choose: pool too small");
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(Below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::uint64_t TrialSeed(std::uint64_t base, std::uint64_t trial) {
  SplitMix64 rng(base + trial * 0x9E3779B97F4A7C15ULL);
  return rng.Next();
}

}  // namespace sfmlb
