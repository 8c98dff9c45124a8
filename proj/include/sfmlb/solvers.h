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

#ifndef SFMLB_SOLVERS_H_
#define SFMLB_SOLVERS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfmlb/exact_value.h"
#include "sfmlb/oracle.h"
#include "sfmlb/subset.h"

namespace sfmlb {

struct SolverResult {
  std::string solver;
  Subset minimizer;
  ExactValue min_value;
  std::uint64_t queries = 0;
  std::uint64_t rounds = 0;
  // queries / (n log2 max(n, 2)).
  double measured_alpha = 0.0;
};

// What a single value reveals about the layer a query first reaches.
struct LayerAnswer {
  // Relation of S ∩ A_layer to R_layer.
  Relation relation;
  // |S ∩ (B_layer \ A_layer)|; known for strictly comparable answers, and
  // for Equal when the caller supplied the query's size inside the pool.
  std::optional<std::size_t> size_sb;
  std::size_t layer;
  // For Equal: the deeper function value (in [0, 2]) carried by the query.
  std::optional<ExactValue> inner_value;
};

// Inverts one layer's value formula. value must come from a query that
// matches every layer before `layer`; coeff is LayerCoefficient of that
// layer and pool_size is |B_layer|.
//
// A normalized value of exactly 1 means S_A is strictly comparable with R
// and S_B = ∅; the direction is then fixed by |S_A| = count_in_pool versus
// r, so both must be supplied or UsageError is thrown. Values outside
// [0, 2] or off the lattice of possible answers raise CorruptedOracleError.
LayerAnswer DecodeLayerAnswer(const ExactValue& value, const ExactValue& coeff,
                              std::size_t pool_size, std::size_t layer,
                              std::optional<std::size_t> count_in_pool =
                                  std::nullopt,
                              std::size_t r = 0);

// Queries all 2^n subsets in one round; returns the first argmin in
// integer-encoding order. Refuses n > kMaxEnumerableSize.
SolverResult BruteForceMinimize(Oracle& oracle);

// Sequential layer-by-layer group testing. For layer k with known prefix
// P = R_1 ∪ ... ∪ R_{k-1} and pool B_k:
//   1. Split the pool by balanced halving, querying P ∪ T ∪ W where T is
//      the accepted set; blocks answered as below-or-equal to R are
//      accepted, others are split until singletons in A_k \ R_k are found.
//   2. Remove halves W from T, querying P ∪ (T \ W); the decoded |S_B|
//      counts how many R_k elements W holds, until R_k is isolated.
// One query per round. Ends with a confirming query of the minimizer.
SolverResult FamilyAwareMinimize(Oracle& oracle);

// One round per layer: query P ∪ {e} for every e in the pool and classify
// each element from its normalized value. Needs an honest oracle.
SolverResult SingletonParallelMinimize(Oracle& oracle);

// Naive batched baseline: each round sends the singleton batch of the
// current layer together with per_round uniformly random queries
// P ∪ X, X ⊆ pool. It stops early only if a random query lands on value 0;
// otherwise it advances one layer per round exactly like
// SingletonParallelMinimize. Needs an honest oracle.
SolverResult RandomBatchMinimize(Oracle& oracle, std::size_t per_round,
                                 std::uint64_t seed);

using Solver = std::function<SolverResult(Oracle&)>;

// "brute_force", "family_aware" or "singleton_parallel"; throws UsageError
// for anything else.
Solver SolverByName(std::string_view name);
std::vector<std::string> SolverNames();

}  // namespace sfmlb

#endif  // SFMLB_SOLVERS_H_
