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

#include "sfmlb/hard_family.h"

#include <algorithm>
#include <string>
#include <utility>

#include "sfmlb/errors.h"
#include "sfmlb/rng.h"

namespace sfmlb {
namespace {

std::int64_t Count(const Subset& s) {
  return static_cast<std::int64_t>(s.cardinality());
}

int MatroidPairLevel(Relation relation) {
  switch (relation) {
    case Relation::kEqual:
      return 0;
    case Relation::kStrictSubset:
    case Relation::kStrictSuperset:
      return 1;
    case Relation::kIncomparable:
      return 2;
  }
  return 2;
}

// Sign of the submodularizer for a given relation of S_A to R.
int SubmodularizerSign(Relation relation) {
  switch (relation) {
    case Relation::kStrictSubset:
      return 1;
    case Relation::kStrictSuperset:
      return -1;
    default:
      return 0;
  }
}

}  // namespace

ExactValue MatroidPairValue(const Subset& a, const Subset& r,
                            const Subset& s_a) {
  if (!r.is_subset_of(a)) throw UsageError("R is not a subset of A");
  if (!s_a.is_subset_of(a)) throw UsageError("S_A is not a subset of A");
  return ExactValue(MatroidPairLevel(Relate(s_a, r)));
}

ExactValue SubmodularizerValue(const Subset& v_mask, const Subset& a,
                               const Subset& r, const Subset& s) {
  if (!r.is_subset_of(a)) throw UsageError("R is not a subset of A");
  if (!a.is_subset_of(v_mask)) throw UsageError("A is not a subset of V");
  if (!s.is_subset_of(v_mask)) throw UsageError("S is not a subset of V");
  const int sign = SubmodularizerSign(Relate(s & a, r));
  return ExactValue(sign * Count(s - a));
}

ExactValue BuildingBlockValue(const Subset& v_mask, const Subset& a,
                              const Subset& r, const ExactValue& bound_m,
                              const SetFunction& g, const Subset& s) {
  if (r.empty()) throw UsageError("building block needs nonempty R");
  if (bound_m <= ExactValue(0)) throw UsageError("building block needs M > 0");
  const Subset s_a = s & a;
  const std::int64_t v_size = Count(v_mask);
  ExactValue value = MatroidPairValue(a, r, s_a);
  value += SubmodularizerValue(v_mask, a, r, s) / ExactValue(2 * v_size);
  if (s_a == r) {
    ExactValue inner = g(s - a);
    if (inner < ExactValue(0) || inner > bound_m) {
      throw ContractViolation("inner function value " + inner.ToString() +
                              " outside [0, " + bound_m.ToString() + "]");
    }
    value += inner / (ExactValue(4 * v_size) * bound_m);
  }
  return value;
}

ExactValue LayerCoefficient(const GroundConfig& config, std::size_t layer) {
  if (layer == 0 || layer > config.ell()) {
    throw UsageError("layer " + std::to_string(layer) + " out of range");
  }
  ExactValue c(1);
  for (std::size_t j = 0; j + 2 <= layer; ++j) {
    const auto remaining =
        static_cast<std::int64_t>(config.effective_size() - 2 * j * config.r());
    c /= ExactValue(8 * remaining);
  }
  return c;
}

std::size_t PoolSize(const GroundConfig& config, std::size_t layer) {
  if (layer == 0 || layer > config.ell()) {
    throw UsageError("layer " + std::to_string(layer) + " out of range");
  }
  return config.effective_size() - 2 * config.r() * (layer - 1);
}

LayeredInstance::LayeredInstance(GroundConfig config, std::vector<Layer> layers)
    : config_(config), layers_(std::move(layers)) {
  const std::size_t n = config_.n();
  const std::size_t r = config_.r();
  if (layers_.size() != config_.ell()) {
    throw UsageError("expected " + std::to_string(config_.ell()) +
                     " layers, got " + std::to_string(layers_.size()));
  }
  Subset covered(n);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& layer = layers_[i];
    const std::string where = "layer " + std::to_string(i + 1) + ": ";
    if (layer.a.ground_size() != n || layer.r.ground_size() != n) {
      throw UsageError(where + "ground size mismatch");
    }
    if (layer.a.cardinality() != 2 * r) throw UsageError(where + "|A| != 2r");
    if (layer.r.cardinality() != r) throw UsageError(where + "|R| != r");
    if (!layer.r.is_subset_of(layer.a)) throw UsageError(where + "R not in A");
    if (layer.a.intersects(covered)) throw UsageError(where + "A overlaps");
    covered |= layer.a;
  }
  const Subset effective = Subset::Prefix(n, config_.effective_size());
  if (!(covered == effective)) {
    throw UsageError("layers must partition the lowest " +
                     std::to_string(config_.effective_size()) + " indices");
  }
  Subset pool = effective;
  for (std::size_t k = 1; k <= layers_.size(); ++k) {
    pools_.push_back(pool);
    pool -= layers_[k - 1].a;
    ExactValue c = LayerCoefficient(config_, k);
    phi_scales_.push_back(
        c / ExactValue(2 * static_cast<std::int64_t>(PoolSize(config_, k))));
    coefficients_.push_back(std::move(c));
  }
}

LayeredInstance LayeredInstance::Canonical(const GroundConfig& config) {
  std::vector<Layer> layers;
  const std::size_t width = 2 * config.r();
  for (std::size_t k = 0; k < config.ell(); ++k) {
    Subset a(config.n());
    Subset r(config.n());
    for (std::size_t i = 0; i < width; ++i) a.insert(k * width + i);
    for (std::size_t i = 0; i < config.r(); ++i) r.insert(k * width + i);
    layers.push_back({a, r});
  }
  return LayeredInstance(config, std::move(layers));
}

bool operator==(const LayeredInstance& a, const LayeredInstance& b) {
  if (!(a.config_ == b.config_) || a.layers_.size() != b.layers_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.layers_.size(); ++i) {
    if (!(a.layers_[i].a == b.layers_[i].a) ||
        !(a.layers_[i].r == b.layers_[i].r)) {
      return false;
    }
  }
  return true;
}

std::optional<std::size_t> FirstDivergentLayer(const LayeredInstance& inst,
                                               const Subset& s) {
  for (std::size_t k = 1; k <= inst.ell(); ++k) {
    const Layer& layer = inst.layer(k);
    if (!((s & layer.a) == layer.r)) return k;
  }
  return std::nullopt;
}

namespace {

ExactValue RecursiveFrom(const LayeredInstance& inst, std::size_t k,
                         const Subset& s) {
  const Layer& layer = inst.layer(k);
  if (k == inst.ell()) return MatroidPairValue(layer.a, layer.r, s & layer.a);
  SetFunction inner = [&inst, k](const Subset& rest) {
    return RecursiveFrom(inst, k + 1, rest);
  };
  return BuildingBlockValue(inst.pool(k), layer.a, layer.r, ExactValue(2),
                            inner, s & inst.pool(k));
}

}  // namespace

ExactValue EvaluateRecursive(const LayeredInstance& inst, const Subset& s) {
  return RecursiveFrom(inst, 1, s & inst.effective_ground());
}

ExactValue EvaluateExplicit(const LayeredInstance& inst, const Subset& s) {
  const auto k = FirstDivergentLayer(inst, s);
  if (!k) return ExactValue(0);
  const Layer& layer = inst.layer(*k);
  const Relation relation = Relate(s & layer.a, layer.r);
  ExactValue value = inst.coefficient(*k) * ExactValue(MatroidPairLevel(relation));
  if (const int sign = SubmodularizerSign(relation); sign != 0) {
    const Subset beyond = (s & inst.pool(*k)) - layer.a;
    value += inst.phi_scale(*k) * ExactValue(sign * Count(beyond));
  }
  return value;
}

MinimizerInfo TrueMinimizer(const LayeredInstance& inst) {
  Subset out(inst.config().n());
  for (const Layer& layer : inst.layers()) out |= layer.r;
  return {out, !inst.config().has_dummies()};
}

LayeredInstance SampleUniformInstance(const GroundConfig& config,
                                      std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::size_t> pool(config.effective_size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  std::vector<Layer> layers;
  layers.reserve(config.ell());
  for (std::size_t k = 0; k < config.ell(); ++k) {
    std::vector<std::size_t> a = rng.Choose(pool, 2 * config.r());
    std::sort(a.begin(), a.end());
    std::vector<std::size_t> r = rng.Choose(a, config.r());
    std::vector<std::size_t> rest;
    std::set_difference(pool.begin(), pool.end(), a.begin(), a.end(),
                        std::back_inserter(rest));
    pool = std::move(rest);
    layers.push_back({Subset::FromIndices(config.n(), a),
                      Subset::FromIndices(config.n(), r)});
  }
  return LayeredInstance(config, std::move(layers));
}

}  // namespace sfmlb
