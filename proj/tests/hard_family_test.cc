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

#include <gtest/gtest.h>

#include <map>

#include "reference_oracle.h"
#include "sfmlb/errors.h"
#include "sfmlb/rng.h"

namespace sfmlb {
namespace {

using sfmlb_testing::IndexSet;
using sfmlb_testing::PlainLayer;
using sfmlb_testing::ReferenceValue;

Subset S(std::size_t n, std::initializer_list<std::size_t> items) {
  return Subset::FromIndices(n, items);
}

LayeredInstance FourInstance() {
  return LayeredInstance(GroundConfig(4, 1), {{S(4, {0, 1}), S(4, {0})},
                                              {S(4, {2, 3}), S(4, {2})}});
}

std::vector<PlainLayer> Plain(const LayeredInstance& inst) {
  std::vector<PlainLayer> out;
  for (const Layer& l : inst.layers()) {
    const auto a = l.a.indices();
    const auto r = l.r.indices();
    out.push_back({IndexSet(a.begin(), a.end()), IndexSet(r.begin(), r.end())});
  }
  return out;
}

IndexSet Plain(const Subset& s) {
  const auto v = s.indices();
  return IndexSet(v.begin(), v.end());
}

TEST(MatroidPairValueTest, Examples) {
  const Subset a = S(2, {0, 1}), r = S(2, {0});
  EXPECT_EQ(MatroidPairValue(a, r, S(2, {})), ExactValue(1));
  EXPECT_EQ(MatroidPairValue(a, r, S(2, {0})), ExactValue(0));
  EXPECT_EQ(MatroidPairValue(a, r, S(2, {1})), ExactValue(2));
  EXPECT_EQ(MatroidPairValue(a, r, S(2, {0, 1})), ExactValue(1));
  EXPECT_THROW(MatroidPairValue(S(3, {0, 1}), S(3, {2}), S(3, {})),
               UsageError);
  EXPECT_THROW(MatroidPairValue(S(3, {0, 1}), S(3, {0}), S(3, {2})),
               UsageError);
}

TEST(SubmodularizerValueTest, Examples) {
  const Subset v = S(4, {0, 1, 2, 3}), a = S(4, {0, 1}), r = S(4, {0});
  EXPECT_EQ(SubmodularizerValue(v, a, r, S(4, {2, 3})), ExactValue(2));
  EXPECT_EQ(SubmodularizerValue(v, a, r, S(4, {0, 1, 2})), ExactValue(-1));
  EXPECT_EQ(SubmodularizerValue(v, a, r, S(4, {1, 3})), ExactValue(0));
  EXPECT_THROW(SubmodularizerValue(S(4, {0, 1}), S(4, {0, 1, 2}), r,
                                   S(4, {})),
               UsageError);
}

TEST(BuildingBlockValueTest, Examples) {
  const Subset v = S(4, {0, 1, 2, 3}), a = S(4, {0, 1}), r = S(4, {0});
  const SetFunction g = [](const Subset& s) {
    return MatroidPairValue(S(4, {2, 3}), S(4, {2}), s & S(4, {2, 3}));
  };
  const ExactValue m(2);
  EXPECT_EQ(BuildingBlockValue(v, a, r, m, g, S(4, {0, 2})), ExactValue(0));
  EXPECT_EQ(BuildingBlockValue(v, a, r, m, g, S(4, {2})), ExactValue(9, 8));
  EXPECT_EQ(BuildingBlockValue(v, a, r, m, g, S(4, {1, 2})), ExactValue(2));
}

TEST(BuildingBlockValueTest, GuardsContract) {
  const Subset v = S(4, {0, 1, 2, 3}), a = S(4, {0, 1}), r = S(4, {0});
  int calls = 0;
  const SetFunction counting = [&calls](const Subset&) {
    ++calls;
    return ExactValue(1);
  };
  BuildingBlockValue(v, a, r, ExactValue(2), counting, S(4, {1, 2}));
  EXPECT_EQ(calls, 0);
  BuildingBlockValue(v, a, r, ExactValue(2), counting, S(4, {0, 2}));
  EXPECT_EQ(calls, 1);
  const SetFunction too_big = [](const Subset&) { return ExactValue(3); };
  EXPECT_THROW(
      BuildingBlockValue(v, a, r, ExactValue(2), too_big, S(4, {0})),
      ContractViolation);
  EXPECT_THROW(BuildingBlockValue(v, a, r, ExactValue(0), counting, S(4, {})),
               UsageError);
}

TEST(LayeredInstanceTest, RejectsInvalidLayers) {
  const GroundConfig c(4, 1);
  EXPECT_THROW(LayeredInstance(c, {{S(4, {0, 1}), S(4, {0})}}), UsageError);
  EXPECT_THROW(LayeredInstance(c, {{S(4, {0, 1}), S(4, {0})},
                                   {S(4, {1, 2}), S(4, {2})}}),
               UsageError);
  EXPECT_THROW(LayeredInstance(c, {{S(4, {0, 1}), S(4, {2})},
                                   {S(4, {2, 3}), S(4, {2})}}),
               UsageError);
  EXPECT_THROW(LayeredInstance(c, {{S(4, {0, 1}), S(4, {0, 1})},
                                   {S(4, {2, 3}), S(4, {2})}}),
               UsageError);
}

TEST(EvaluateTest, FourElementExamples) {
  const LayeredInstance inst = FourInstance();
  for (const auto& [s, expected] :
       std::vector<std::pair<Subset, ExactValue>>{
           {S(4, {0, 2}), ExactValue(0)},
           {S(4, {0, 3}), ExactValue(1, 16)},
           {S(4, {1}), ExactValue(2)},
           {S(4, {}), ExactValue(1)}}) {
    EXPECT_EQ(EvaluateRecursive(inst, s), expected) << s.ToString();
    EXPECT_EQ(EvaluateExplicit(inst, s), expected) << s.ToString();
  }
}

TEST(FirstDivergentLayerTest, Examples) {
  const LayeredInstance inst = FourInstance();
  EXPECT_EQ(FirstDivergentLayer(inst, S(4, {0, 2})), std::nullopt);
  EXPECT_EQ(FirstDivergentLayer(inst, S(4, {})), 1u);
  EXPECT_EQ(FirstDivergentLayer(inst, S(4, {0, 3})), 2u);
}

TEST(TrueMinimizerTest, Examples) {
  EXPECT_EQ(TrueMinimizer(FourInstance()).set, S(4, {0, 2}));
  const LayeredInstance base(GroundConfig(2, 1), {{S(2, {0, 1}), S(2, {1})}});
  EXPECT_EQ(TrueMinimizer(base).set, S(2, {1}));
  const LayeredInstance eight(
      GroundConfig(8, 2),
      {{S(8, {0, 1, 2, 3}), S(8, {0, 1})}, {S(8, {4, 5, 6, 7}), S(8, {4, 5})}});
  EXPECT_EQ(TrueMinimizer(eight).set, S(8, {0, 1, 4, 5}));
  EXPECT_TRUE(TrueMinimizer(eight).unique);
  EXPECT_FALSE(
      TrueMinimizer(LayeredInstance::Canonical(GroundConfig(5, 1))).unique);
}

TEST(EvaluateTest, MatchesReferenceOracleExhaustively) {
  for (const auto& [n, r] : std::vector<std::pair<std::size_t, std::size_t>>{
           {6, 1}, {8, 1}, {8, 2}, {9, 2}, {10, 1}, {12, 3}}) {
    const GroundConfig c(n, r);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const LayeredInstance inst = SampleUniformInstance(c, seed);
      const auto plain = Plain(inst);
      for (const Subset& s : EnumerateSubsets(n)) {
        const ExactValue v = EvaluateExplicit(inst, s);
        ASSERT_EQ(v.raw(), ReferenceValue(plain, Plain(s)))
            << n << "," << r << " " << s.ToString();
        ASSERT_EQ(v, EvaluateRecursive(inst, s));
      }
    }
  }
}

TEST(EvaluateTest, DummiesNeverAffectValues) {
  const LayeredInstance inst = SampleUniformInstance(GroundConfig(11, 2), 3);
  for (const Subset& s : EnumerateSubsets(8)) {
    Subset wide(11);
    for (std::size_t e : s.indices()) wide.insert(e);
    const ExactValue v = EvaluateExplicit(inst, wide);
    wide.insert(8);
    wide.insert(10);
    ASSERT_EQ(EvaluateExplicit(inst, wide), v);
    ASSERT_EQ(EvaluateRecursive(inst, wide), v);
  }
}

TEST(LayerCoefficientTest, ProductForm) {
  const GroundConfig c(12, 1);
  EXPECT_EQ(LayerCoefficient(c, 1), ExactValue(1));
  EXPECT_EQ(LayerCoefficient(c, 2), ExactValue(1, 96));
  EXPECT_EQ(LayerCoefficient(c, 3), ExactValue(1, 96 * 80));
  EXPECT_EQ(PoolSize(c, 3), 8u);
  EXPECT_EQ(PoolSize(GroundConfig(13, 2), 2), 8u);
}

TEST(ScalingTest, LayerValuesFactorOut) {
  const GroundConfig c(10, 1);
  const LayeredInstance inst = SampleUniformInstance(c, 11);
  for (const Subset& s : EnumerateSubsets(10)) {
    const auto k = FirstDivergentLayer(inst, s);
    if (!k) continue;
    const ExactValue base =
        EvaluateExplicit(inst, s) / LayerCoefficient(c, *k);
    // Base-layer value set: f in {1, 2} plus phi/(2|B|) with |phi| <= |B|-2r.
    const ExactValue b(static_cast<std::int64_t>(PoolSize(c, *k)));
    const ExactValue scaled = (base - ExactValue(1)) * ExactValue(2) * b;
    ASSERT_TRUE(base == ExactValue(2) || scaled.is_integer())
        << s.ToString();
    ASSERT_LE(base, ExactValue(2));
    ASSERT_GE(base, ExactValue(1, 2));
  }
}

TEST(HidingTest, AgreementOnPrefixGivesEqualValues) {
  const GroundConfig c(10, 1);
  SplitMix64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const LayeredInstance x = SampleUniformInstance(c, rng.Next());
    // Keep x's first two layers and complete the rest differently.
    std::vector<Layer> mixed(x.layers().begin(), x.layers().begin() + 2);
    const Subset used = x.layer(1).a | x.layer(2).a;
    Subset rest = Subset::Full(10) - used;
    while (mixed.size() < x.ell()) {
      const auto low = rest.lowest(2);
      const Subset a = Subset::FromIndices(10, low);
      const Subset r = Subset::FromIndices(10, {low[rng.Below(2)]});
      mixed.push_back({a, r});
      rest -= a;
    }
    const LayeredInstance z(c, mixed);
    for (const Subset& s : EnumerateSubsets(10)) {
      const auto k = FirstDivergentLayer(x, s);
      if (k && *k <= 2) ASSERT_EQ(EvaluateExplicit(x, s), EvaluateExplicit(z, s));
    }
  }
}

TEST(SampleUniformInstanceTest, DeterministicAndValid) {
  const GroundConfig c(20, 2);
  EXPECT_EQ(SampleUniformInstance(c, 77), SampleUniformInstance(c, 77));
  EXPECT_FALSE(SampleUniformInstance(c, 77) == SampleUniformInstance(c, 78));
}

TEST(SampleUniformInstanceTest, BaseCaseFrequency) {
  const GroundConfig c(2, 1);
  int ones = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    ones += SampleUniformInstance(c, seed).layer(1).r.contains(1);
  }
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.02);
}

TEST(SampleUniformInstanceTest, MarginalOfElementZero) {
  // Pr[0 in A_1] = 2r/n and Pr[0 in R_1 | 0 in A_1] = 1/2.
  for (const auto& [n, r] :
       std::vector<std::pair<std::size_t, std::size_t>>{{8, 2}, {16, 1}}) {
    const GroundConfig c(n, r);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100000; ++seed) {
      hits += SampleUniformInstance(c, seed).layer(1).r.contains(0);
    }
    const double expected = (2.0 * r / n) * 0.5;
    EXPECT_NEAR(hits / 100000.0, expected, 0.01) << n << "," << r;
  }
}

TEST(SampleUniformInstanceTest, LayerPairsAreUniform) {
  // Every (A_1, R_1) of n = 4, r = 1 should appear with probability 1/12.
  const GroundConfig c(4, 1);
  std::map<std::string, int> hist;
  const int draws = 60000;
  for (std::uint64_t seed = 0; seed < draws; ++seed) {
    const LayeredInstance inst = SampleUniformInstance(c, seed);
    const Layer& l = inst.layer(1);
    ++hist[l.a.ToString() + l.r.ToString()];
  }
  EXPECT_EQ(hist.size(), 12u);
  for (const auto& [key, count] : hist) {
    EXPECT_NEAR(count / static_cast<double>(draws), 1.0 / 12.0, 0.006) << key;
  }
}

}  // namespace
}  // namespace sfmlb
