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

#ifndef SFMLB_HARD_FAMILY_H_
#define SFMLB_HARD_FAMILY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sfmlb/exact_value.h"
#include "sfmlb/subset.h"

namespace sfmlb {

using SetFunction = std::function<ExactValue(const Subset&)>;

// Sum of two rank-1 matroid rank functions on A: 0 at R, 1 on sets strictly
// comparable with R, 2 otherwise. Throws UsageError unless R, s_a are
// subsets of A.
ExactValue MatroidPairValue(const Subset& a, const Subset& r,
                            const Subset& s_a);

// The submodularizer on ground set v_mask with B = v_mask \ A:
// +|S_B| when S_A is a strict subset of R, -|S_B| when a strict superset,
// 0 otherwise. Not submodular on its own once |A| >= |R| + 2.
ExactValue SubmodularizerValue(const Subset& v_mask, const Subset& a,
                               const Subset& r, const Subset& s);

// f_{A,R}(S_A) + phi(S) / (2|V|) + [S_A = R] * g(S_B) / (4 M |V|).
//
// g is only called when S_A = R, with S_B = s \ A. Any observed g value
// outside [0, bound_m] raises ContractViolation, since the range and
// unique-minimizer guarantees of the block rely on it.
ExactValue BuildingBlockValue(const Subset& v_mask, const Subset& a,
                              const Subset& r, const ExactValue& bound_m,
                              const SetFunction& g, const Subset& s);

struct Layer {
  Subset a;
  Subset r;
};

// ∏_{j=0}^{layer-2} 1/(8(n' - 2jr)), the scale of every value whose first
// divergent layer is the given one (1-based). Equals 1 for layer 1.
ExactValue LayerCoefficient(const GroundConfig& config, std::size_t layer);
// |B_layer| = n' - 2r(layer - 1).
std::size_t PoolSize(const GroundConfig& config, std::size_t layer);

// One member of the family: a partition A_1..A_ell of V' (the lowest
// effective_size indices) into blocks of size 2r, with R_i ⊆ A_i, |R_i| = r.
class LayeredInstance {
 public:
  // Throws UsageError if the layers do not form a valid member.
  LayeredInstance(GroundConfig config, std::vector<Layer> layers);

  // A_i = next 2r lowest indices, R_i = lowest r of A_i.
  static LayeredInstance Canonical(const GroundConfig& config);

  const GroundConfig& config() const { return config_; }
  std::size_t ell() const { return layers_.size(); }
  std::span<const Layer> layers() const { return layers_; }
  // Layer numbers are 1-based throughout.
  const Layer& layer(std::size_t k) const { return layers_.at(k - 1); }
  const Subset& pool(std::size_t k) const { return pools_.at(k - 1); }
  const Subset& effective_ground() const { return pools_.front(); }
  const ExactValue& coefficient(std::size_t k) const {
    return coefficients_.at(k - 1);
  }
  // coefficient(k) / (2 |B_k|).
  const ExactValue& phi_scale(std::size_t k) const {
    return phi_scales_.at(k - 1);
  }

  friend bool operator==(const LayeredInstance& a, const LayeredInstance& b);

 private:
  GroundConfig config_;
  std::vector<Layer> layers_;
  std::vector<Subset> pools_;
  std::vector<ExactValue> coefficients_;
  std::vector<ExactValue> phi_scales_;
};

// Smallest k with s ∩ A_k != R_k, or nullopt if s matches every layer.
std::optional<std::size_t> FirstDivergentLayer(const LayeredInstance& inst,
                                               const Subset& s);

// Literal recursion through BuildingBlockValue with M = 2. Slow; kept as
// the cross-check for EvaluateExplicit.
ExactValue EvaluateRecursive(const LayeredInstance& inst, const Subset& s);

// Closed form: 0 if s matches every layer, else
// c_k * (f_{A_k,R_k}(S_{A_k}) + phi_{B_k,A_k,R_k}(S_{B_k}) / (2|B_k|))
// at the first divergent layer k. This is the production evaluation path.
ExactValue EvaluateExplicit(const LayeredInstance& inst, const Subset& s);

struct MinimizerInfo {
  Subset set;
  // False when there are dummy elements: the set then minimizes but any
  // dummy may be added freely, so it is only the minimal minimizer over V'.
  bool unique = true;
};

// R_1 ∪ ... ∪ R_ell.
MinimizerInfo TrueMinimizer(const LayeredInstance& inst);

// Uniform over the family on V': layer by layer A_i is a uniform 2r-subset
// of the remaining pool and R_i a uniform r-subset of A_i, both drawn with
// SplitMix64::Choose from the sorted candidate list.
LayeredInstance SampleUniformInstance(const GroundConfig& config,
                                      std::uint64_t seed);

}  // namespace sfmlb

#endif  // SFMLB_HARD_FAMILY_H_
