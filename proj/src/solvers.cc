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

#include "sfmlb/solvers.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

#include "sfmlb/errors.h"
#include "sfmlb/hard_family.h"
#include "sfmlb/rng.h"

namespace sfmlb {
namespace {

double Alpha(std::uint64_t queries, std::size_t n) {
  const double size = static_cast<double>(std::max<std::size_t>(n, 2));
  return static_cast<double>(queries) / (size * std::log2(size));
}

SolverResult Finish(std::string name, Subset minimizer, ExactValue value,
                    const Oracle& oracle) {
  const OracleStats stats = oracle.stats();
  SolverResult out{std::move(name), std::move(minimizer), std::move(value),
                   stats.queries, stats.rounds, 0.0};
  out.measured_alpha = Alpha(out.queries, oracle.config().n());
  return out;
}

// Exact size from a rational that must be a non-negative integer.
std::size_t ExactCount(const ExactValue& v, const char* what) {
  if (!v.is_integer() || v < ExactValue(0)) {
    throw CorruptedOracleError(std::string("non-integral ") + what + " " +
                               v.ToString());
  }
  return static_cast<std::size_t>(v.numerator().get_ui());
}

// Oracle access for one layer: every query is prefix ∪ x with x ⊆ pool.
class LayerProbe {
 public:
  LayerProbe(Oracle& oracle, Subset prefix, Subset pool, std::size_t layer)
      : oracle_(oracle),
        prefix_(std::move(prefix)),
        pool_(std::move(pool)),
        layer_(layer),
        coeff_(LayerCoefficient(oracle.config(), layer)),
        pool_size_(pool_.cardinality()) {}

  LayerAnswer Ask(const Subset& x) {
    oracle_.BeginRound();
    const ExactValue value = oracle_.Answer(prefix_ | x);
    return DecodeLayerAnswer(value, coeff_, pool_size_, layer_,
                             x.cardinality(), oracle_.config().r());
  }

  std::size_t n() const { return oracle_.config().n(); }

 private:
  Oracle& oracle_;
  Subset prefix_;
  Subset pool_;
  std::size_t layer_;
  ExactValue coeff_;
  std::size_t pool_size_;
};

Subset ToSubset(std::size_t n, std::span<const std::size_t> elems) {
  return Subset::FromIndices(n, elems);
}

// Phase 1: find the r elements of A_k \ R_k. Returns how many were found
// inside block. known_bad means block is already known to hold one.
std::size_t ClassifyBlock(LayerProbe& probe, std::span<const std::size_t> block,
                          bool known_bad, std::size_t r, Subset& accepted,
                          std::vector<std::size_t>& bad) {
  if (block.empty()) return 0;
  const Subset block_set = ToSubset(probe.n(), block);
  if (bad.size() == r) {
    accepted |= block_set;
    return 0;
  }
  if (!known_bad) {
    const LayerAnswer ans = probe.Ask(accepted | block_set);
    if (ans.relation == Relation::kStrictSubset ||
        ans.relation == Relation::kEqual) {
      accepted |= block_set;
      return 0;
    }
  }
  if (block.size() == 1) {
    bad.push_back(block[0]);
    return 1;
  }
  const std::size_t half = (block.size() + 1) / 2;
  const std::size_t left =
      ClassifyBlock(probe, block.first(half), false, r, accepted, bad);
  const std::size_t right =
      ClassifyBlock(probe, block.subspan(half), left == 0, r, accepted, bad);
  return left + right;
}

// Phase 2: block holds exactly `inside` elements of R_k. T is the accepted
// set from phase 1, so T ∩ A_k = R_k.
void IsolateR(LayerProbe& probe, const Subset& t,
              std::span<const std::size_t> block, std::size_t inside,
              std::size_t r, std::vector<std::size_t>& found) {
  if (inside == 0) return;
  if (inside == block.size()) {
    found.insert(found.end(), block.begin(), block.end());
    return;
  }
  const std::size_t half = (block.size() + 1) / 2;
  const auto left = block.first(half);
  const Subset query = t - ToSubset(probe.n(), left);
  const LayerAnswer ans = probe.Ask(query);
  // |query ∩ A_k| = r - |left ∩ R_k| and |query| = |query ∩ A_k| + |S_B|.
  std::size_t kept_r;
  if (ans.relation == Relation::kEqual) {
    kept_r = r;
  } else if (ans.relation == Relation::kStrictSubset && ans.size_sb) {
    kept_r = query.cardinality() - *ans.size_sb;
  } else {
    throw CorruptedOracleError("removal query was not below R");
  }
  if (kept_r > r || r - kept_r > inside) {
    throw CorruptedOracleError("inconsistent R count while isolating R");
  }
  const std::size_t left_inside = r - kept_r;
  IsolateR(probe, t, left, left_inside, r, found);
  IsolateR(probe, t, block.subspan(half), inside - left_inside, r, found);
}

}  // namespace

LayerAnswer DecodeLayerAnswer(const ExactValue& value, const ExactValue& coeff,
                              std::size_t pool_size, std::size_t layer,
                              std::optional<std::size_t> count_in_pool,
                              std::size_t r) {
  if (coeff <= ExactValue(0) || pool_size == 0) {
    throw UsageError("decode needs a positive coefficient and pool");
  }
  const ExactValue v = value / coeff;
  const ExactValue one(1);
  const ExactValue two_b(2 * static_cast<std::int64_t>(pool_size));
  if (v < ExactValue(0) || v > ExactValue(2)) {
    throw CorruptedOracleError("normalized value " + v.ToString() +
                               " outside [0, 2]");
  }
  LayerAnswer out{Relation::kIncomparable, std::nullopt, layer, std::nullopt};
  if (v == ExactValue(2)) return out;
  if (v < ExactValue(1, 2)) {
    out.relation = Relation::kEqual;
    out.inner_value =
        v * ExactValue(8 * static_cast<std::int64_t>(pool_size));
    if (count_in_pool && *count_in_pool >= r && r > 0) {
      out.size_sb = *count_in_pool - r;
    }
    return out;
  }
  if (v == one) {
    if (!count_in_pool || r == 0) {
      throw UsageError("normalized value 1 needs the query size and r");
    }
    if (*count_in_pool == r) {
      throw CorruptedOracleError("value 1 with |S_A| = r is impossible");
    }
    out.relation = *count_in_pool < r ? Relation::kStrictSubset
                                      : Relation::kStrictSuperset;
    out.size_sb = 0;
    return out;
  }
  if (v > one && v <= ExactValue(3, 2)) {
    out.relation = Relation::kStrictSubset;
    out.size_sb = ExactCount(two_b * (v - one), "|S_B|");
    return out;
  }
  if (v < one) {
    out.relation = Relation::kStrictSuperset;
    out.size_sb = ExactCount(two_b * (one - v), "|S_B|");
    return out;
  }
  throw CorruptedOracleError("normalized value " + v.ToString() +
                             " matches no layer answer");
}

SolverResult BruteForceMinimize(Oracle& oracle) {
  const std::size_t n = oracle.config().n();
  const SubsetRange range(n);
  constexpr std::uint64_t kChunk = 4096;
  oracle.BeginRound();
  std::optional<ExactValue> best;
  std::uint64_t best_code = 0;
  std::vector<Subset> batch;
  for (std::uint64_t start = 0; start < range.size(); start += kChunk) {
    const std::uint64_t stop = std::min(range.size(), start + kChunk);
    batch.clear();
    for (std::uint64_t code = start; code < stop; ++code) {
      batch.push_back(Subset::FromBits(n, code));
    }
    const std::vector<ExactValue> values = oracle.AnswerBatch(batch);
    for (std::uint64_t i = 0; i < values.size(); ++i) {
      if (!best || values[i] < *best) {
        best = values[i];
        best_code = start + i;
      }
    }
  }
  return Finish("brute_force", Subset::FromBits(n, best_code), *best, oracle);
}

SolverResult FamilyAwareMinimize(Oracle& oracle) {
  const GroundConfig& config = oracle.config();
  const std::size_t n = config.n();
  const std::size_t r = config.r();
  Subset prefix(n);
  Subset pool = Subset::Prefix(n, config.effective_size());
  for (std::size_t k = 1; k <= config.ell(); ++k) {
    LayerProbe probe(oracle, prefix, pool, k);
    const std::vector<std::size_t> elems = pool.indices();

    Subset accepted(n);
    std::vector<std::size_t> bad;
    ClassifyBlock(probe, elems, true, r, accepted, bad);
    if (bad.size() != r) {
      throw CorruptedOracleError("layer " + std::to_string(k) + ": found " +
                                 std::to_string(bad.size()) +
                                 " elements outside R, expected " +
                                 std::to_string(r));
    }

    std::vector<std::size_t> r_elems;
    if (accepted.cardinality() == r) {
      r_elems = accepted.indices();
    } else {
      const std::vector<std::size_t> t_elems = accepted.indices();
      IsolateR(probe, accepted, t_elems, r, r, r_elems);
    }
    if (r_elems.size() != r) {
      throw CorruptedOracleError("layer " + std::to_string(k) +
                                 ": failed to isolate R");
    }
    std::sort(r_elems.begin(), r_elems.end());
    const Subset r_set = ToSubset(n, r_elems);
    prefix |= r_set;
    pool -= r_set;
    pool -= ToSubset(n, bad);
  }
  oracle.BeginRound();
  ExactValue value = oracle.Answer(prefix);
  if (!value.is_zero()) {
    throw CorruptedOracleError("recovered set has value " + value.ToString());
  }
  return Finish("family_aware", prefix, std::move(value), oracle);
}

namespace {

// Splits one layer's pool from the normalized singleton values. Returns
// R_k and A_k \ R_k.
std::pair<Subset, Subset> ClassifySingletons(
    const GroundConfig& config, std::size_t k, std::span<const std::size_t> elems,
    std::span<const ExactValue> values, std::size_t pool_size) {
  const std::size_t n = config.n();
  const std::size_t r = config.r();
  const ExactValue coeff = LayerCoefficient(config, k);
  const ExactValue deeper =
      ExactValue(1) + ExactValue(1, 2 * static_cast<std::int64_t>(pool_size));
  Subset r_set(n);
  Subset a_set(n);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const ExactValue v = values[i] / coeff;
    if (v == ExactValue(2)) {
      a_set.insert(elems[i]);
    } else if ((r >= 2 && v == ExactValue(1)) ||
               (r == 1 && v < ExactValue(1, 2))) {
      r_set.insert(elems[i]);
    } else if (!(v == deeper)) {
      throw CorruptedOracleError("singleton value " + v.ToString() +
                                 " in layer " + std::to_string(k));
    }
  }
  if (r_set.cardinality() != r || a_set.cardinality() != r) {
    throw CorruptedOracleError("layer " + std::to_string(k) +
                               " classification has wrong sizes");
  }
  return {std::move(r_set), std::move(a_set)};
}

std::vector<Subset> SingletonBatch(const Subset& prefix,
                                   std::span<const std::size_t> elems) {
  std::vector<Subset> batch;
  batch.reserve(elems.size());
  for (std::size_t e : elems) {
    Subset q = prefix;
    q.insert(e);
    batch.push_back(std::move(q));
  }
  return batch;
}

}  // namespace

SolverResult SingletonParallelMinimize(Oracle& oracle) {
  const GroundConfig& config = oracle.config();
  const std::size_t n = config.n();
  Subset prefix(n);
  Subset pool = Subset::Prefix(n, config.effective_size());
  for (std::size_t k = 1; k <= config.ell(); ++k) {
    const std::vector<std::size_t> elems = pool.indices();
    oracle.BeginRound();
    const std::vector<ExactValue> values =
        oracle.AnswerBatch(SingletonBatch(prefix, elems));
    auto [r_set, a_set] =
        ClassifySingletons(config, k, elems, values, elems.size());
    prefix |= r_set;
    pool -= r_set;
    pool -= a_set;
  }
  // Every member of the family has minimum value 0 at the recovered set.
  return Finish("singleton_parallel", prefix, ExactValue(0), oracle);
}

SolverResult RandomBatchMinimize(Oracle& oracle, std::size_t per_round,
                                 std::uint64_t seed) {
  const GroundConfig& config = oracle.config();
  const std::size_t n = config.n();
  SplitMix64 rng(seed);
  Subset prefix(n);
  Subset pool = Subset::Prefix(n, config.effective_size());
  for (std::size_t k = 1; k <= config.ell(); ++k) {
    const std::vector<std::size_t> elems = pool.indices();
    std::vector<Subset> batch = SingletonBatch(prefix, elems);
    for (std::size_t q = 0; q < per_round; ++q) {
      Subset s = prefix;
      for (std::size_t e : elems) {
        if (rng.Bit()) s.insert(e);
      }
      batch.push_back(std::move(s));
    }
    oracle.BeginRound();
    const std::vector<ExactValue> values = oracle.AnswerBatch(batch);
    for (std::size_t i = elems.size(); i < batch.size(); ++i) {
      if (values[i].is_zero()) {
        return Finish("random_batch", batch[i], values[i], oracle);
      }
    }
    auto [r_set, a_set] = ClassifySingletons(
        config, k, elems, std::span(values).first(elems.size()), elems.size());
    prefix |= r_set;
    pool -= r_set;
    pool -= a_set;
  }
  return Finish("random_batch", prefix, ExactValue(0), oracle);
}

Solver SolverByName(std::string_view name) {
  if (name == "brute_force") return BruteForceMinimize;
  if (name == "family_aware") return FamilyAwareMinimize;
  if (name == "singleton_parallel") return SingletonParallelMinimize;
  throw UsageError("unknown solver \"" + std::string(name) + "\"");
}

std::vector<std::string> SolverNames() {
  return {"brute_force", "family_aware", "singleton_parallel"};
}

}  // namespace sfmlb
