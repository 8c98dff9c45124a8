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

#ifndef SFMLB_VERIFY_H_
#define SFMLB_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sfmlb/exact_value.h"
#include "sfmlb/hard_family.h"
#include "sfmlb/kernels.h"
#include "sfmlb/subset.h"

namespace sfmlb {

// Largest n for the exhaustive verification entry points.
inline constexpr std::size_t kMaxVerifySize = 12;

// Either a pair violation (e unset): lhs = f(X) + f(Y) < rhs = f(X∪Y) + f(X∩Y),
// or a marginal violation with X ⊆ Y, e ∉ Y:
// lhs = f(Y+e) - f(Y) > rhs = f(X+e) - f(X).
struct ViolationWitness {
  Subset x;
  Subset y;
  std::optional<std::size_t> e;
  ExactValue lhs;
  ExactValue rhs;
};

// Recomputes the witness values from f; true iff they match and still
// violate.
bool WitnessHolds(const SetFunction& f, const ViolationWitness& w);

std::optional<ViolationWitness> CheckSubmodularPairs(
    const SetFunction& f, std::size_t n,
    ExecPolicy policy = ExecPolicy::kParallel);
std::optional<ViolationWitness> CheckSubmodularPairs(
    std::span<const ExactValue> values, std::size_t n,
    ExecPolicy policy = ExecPolicy::kParallel);
// Random pairs for ground sets too large to scan; X, Y uniform.
std::optional<ViolationWitness> CheckSubmodularPairsSampled(
    const SetFunction& f, std::size_t n, std::uint64_t samples,
    std::uint64_t seed);

std::optional<ViolationWitness> CheckMarginalSubmodular(
    const SetFunction& f, std::size_t n,
    ExecPolicy policy = ExecPolicy::kParallel);
std::optional<ViolationWitness> CheckMarginalSubmodular(
    std::span<const ExactValue> values, std::size_t n,
    ExecPolicy policy = ExecPolicy::kParallel);

struct PropertyReport {
  bool range_ok = false;
  bool unique_min_ok = false;
  bool submodular_ok = false;
  // First argmin in encoding order.
  Subset minimizer;
  std::uint64_t argmin_count = 0;
  std::optional<ViolationWitness> witness;

  bool all_ok() const { return range_ok && unique_min_ok && submodular_ok; }
};

// Range [0, 2], a single argmin equal to predicted, and the exhaustive
// pair check, all over a tabulated function.
PropertyReport CheckFamilyProperties(std::span<const ExactValue> values,
                                 std::size_t n, const Subset& predicted,
                                 ExecPolicy policy = ExecPolicy::kParallel);
// Predicted minimizer: TrueMinimizer(inst). n <= kMaxVerifySize.
PropertyReport CheckFamilyProperties(const LayeredInstance& inst,
                                 ExecPolicy policy = ExecPolicy::kParallel);
// The building block over v_mask = {0..n-1}; predicted minimizer is
// R ∪ argmin g, where g must have a unique minimizer over subsets of V \ A.
PropertyReport CheckBuildingBlockProperties(
    std::size_t n, const Subset& a, const Subset& r, const ExactValue& bound_m,
    const SetFunction& g, ExecPolicy policy = ExecPolicy::kParallel);

// Searches the marginal pattern X_A = R, R ⊊ Y_A ⊊ A, X_B = Y_B ≠ ∅,
// e ∈ A \ Y_A for the standalone submodularizer and returns the first
// verified witness. Needs |A| >= |R| + 2 and B nonempty.
ViolationWitness FindPhiViolation(const Subset& v_mask, const Subset& a,
                                  const Subset& r);
// V = {0..n-1}, A = first 2r elements, R = first r; needs r >= 2.
ViolationWitness FindPhiViolation(const GroundConfig& config);

}  // namespace sfmlb

#endif  // SFMLB_VERIFY_H_
