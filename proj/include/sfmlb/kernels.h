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

#ifndef SFMLB_KERNELS_H_
#define SFMLB_KERNELS_H_

// Exhaustive set-function kernels. Each has a straightforward serial
// reference and an OpenMP version; both return the same answer, including
// which violation is reported (the first in canonical order).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sfmlb/exact_value.h"
#include "sfmlb/subset.h"

namespace sfmlb {

enum class ExecPolicy { kSerial, kParallel };

// Largest ground size the exhaustive pair and marginal scans accept.
inline constexpr std::size_t kMaxExhaustiveScanSize = 16;

// values[code] = fn(Subset::FromBits(n, code)) for every code < 2^n.
// The parallel version calls fn concurrently.
std::vector<ExactValue> TabulateSerial(
    const std::function<ExactValue(const Subset&)>& fn, std::size_t n);
std::vector<ExactValue> TabulateParallel(
    const std::function<ExactValue(const Subset&)>& fn, std::size_t n);
std::vector<ExactValue> Tabulate(
    const std::function<ExactValue(const Subset&)>& fn, std::size_t n,
    ExecPolicy policy);

// A pair (x, y), x < y as integer codes, with
// values[x] + values[y] < values[x|y] + values[x&y].
// Canonical order: x ascending, then y ascending.
struct PairViolation {
  std::uint64_t x;
  std::uint64_t y;
};

std::optional<PairViolation> FindPairViolationSerial(
    std::span<const ExactValue> values, std::size_t n);
std::optional<PairViolation> FindPairViolationParallel(
    std::span<const ExactValue> values, std::size_t n);
std::optional<PairViolation> FindPairViolation(
    std::span<const ExactValue> values, std::size_t n, ExecPolicy policy);

// x ⊆ y, element e outside y, with the marginal of e at y strictly larger
// than at x. Canonical order: y ascending, then e, then x.
struct MarginalViolation {
  std::uint64_t x;
  std::uint64_t y;
  std::size_t e;
};

std::optional<MarginalViolation> FindMarginalViolationSerial(
    std::span<const ExactValue> values, std::size_t n);
std::optional<MarginalViolation> FindMarginalViolationParallel(
    std::span<const ExactValue> values, std::size_t n);
std::optional<MarginalViolation> FindMarginalViolation(
    std::span<const ExactValue> values, std::size_t n, ExecPolicy policy);

}  // namespace sfmlb

#endif  // SFMLB_KERNELS_H_
