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

#include "sfmlb/harness.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sfmlb/errors.h"

namespace sfmlb {
namespace {

ExperimentConfig Config(Mode mode, std::size_t n, std::size_t r,
                        std::size_t trials) {
  ExperimentConfig c;
  c.mode = mode;
  c.n = n;
  c.r = r;
  c.trials = trials;
  return c;
}

const Check* FindCheck(const Report& report, const std::string& name) {
  for (const Check& c : report.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

TEST(RunVerifyTest, SampledFamiliesPass) {
  EXPECT_TRUE(RunVerify(Config(Mode::kVerify, 8, 1, 50)).passed());
  EXPECT_TRUE(RunVerify(Config(Mode::kVerify, 8, 2, 50)).passed());
  EXPECT_TRUE(RunVerify(Config(Mode::kVerify, 9, 2, 5)).passed());
}

TEST(RunVerifyTest, SampledModeAboveExhaustiveLimit) {
  const Report rep = RunVerify(Config(Mode::kVerify, 20, 2, 2));
  EXPECT_TRUE(rep.passed());
  EXPECT_FALSE(rep.note.empty());
}

TEST(RunVerifyTest, CorruptedEvaluatorFailsWithWitness) {
  VerifyHooks hooks;
  // Lifts the minimizer's value to the top of the range.
  hooks.corrupt_table = [](std::vector<ExactValue>& values) {
    *std::min_element(values.begin(), values.end()) = ExactValue(2);
  };
  const Report rep = RunVerify(Config(Mode::kVerify, 6, 1, 3), hooks);
  EXPECT_FALSE(rep.passed());
  const Check* sub = FindCheck(rep, "submodular");
  ASSERT_NE(sub, nullptr);
  EXPECT_FALSE(sub->passed);
  ASSERT_TRUE(sub->evidence.contains("witness"));
  EXPECT_TRUE(sub->evidence.contains("instance"));
  EXPECT_FALSE(FindCheck(rep, "explicit_equals_recursive")->passed);
}

TEST(RunDuelTest, FamilyAwareMeetsFloor) {
  for (std::size_t n : {16u, 64u}) {
    const Report rep = RunDuel(Config(Mode::kDuel, n, 1, 1));
    EXPECT_TRUE(rep.passed()) << n;
    const std::uint64_t queries = rep.aggregate[0].at("queries");
    EXPECT_GE(static_cast<double>(queries), DeterministicQueryFloor(n));
  }
  EXPECT_EQ(DeterministicQueryFloor(64), 128.0);
  EXPECT_EQ(DeterministicQueryFloor(16), 16.0);
}

TEST(RunDuelTest, BruteForceDuel) {
  ExperimentConfig c = Config(Mode::kDuel, 8, 1, 1);
  c.solver = "brute_force";
  const Report rep = RunDuel(c);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.aggregate[0].at("queries"), 256);
}

TEST(RunDuelTest, RejectsUnsupportedConfigs) {
  EXPECT_THROW(RunDuel(Config(Mode::kDuel, 8, 2, 1)), UsageError);
  EXPECT_THROW(RunDuel(Config(Mode::kDuel, 9, 1, 1)), UsageError);
  ExperimentConfig c = Config(Mode::kDuel, 8, 1, 1);
  c.solver = "singleton_parallel";
  EXPECT_THROW(RunDuel(c), UsageError);
}

TEST(RunParallelTest, RoundsEqualLayerCount) {
  const Report rep = RunParallel(Config(Mode::kParallel, 32, 4, 100));
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.aggregate[0].at("singleton_rounds"), 4);
  EXPECT_EQ(rep.aggregate[0].at("singleton_correct"), 100);
  const Report small = RunParallel(Config(Mode::kParallel, 16, 2, 10));
  EXPECT_TRUE(small.passed());
  EXPECT_NE(FindCheck(small, "brute_force_agrees"), nullptr);
  EXPECT_THROW(RunParallel(Config(Mode::kParallel, 10, 3, 1)), UsageError);
}

TEST(RunHidingTest, BaseCaseHitRate) {
  ExperimentConfig c = Config(Mode::kHiding, 4, 1, 1);
  c.samples = 1000000;
  c.hiding_triples = 200;
  const Report rep = RunHiding(c);
  EXPECT_TRUE(rep.passed());
  EXPECT_NEAR(rep.aggregate[0].at("hit_rate").get<double>(), 0.25, 0.01);
}

TEST(EstimateHitRateTest, WideLayer) {
  const HitRateEstimate est = EstimateHitRate(GroundConfig(32, 8), 200000, 3);
  EXPECT_LE(static_cast<double>(est.hits) / est.samples,
            4.0 * 17.0 / 65536.0);
}

TEST(ResampleBelowTest, KeepsPrefixOnly) {
  const LayeredInstance inst = SampleUniformInstance(GroundConfig(12, 1), 1);
  const LayeredInstance twin = ResampleBelow(inst, 1, 99);
  EXPECT_EQ(twin.layer(1).a, inst.layer(1).a);
  EXPECT_EQ(twin.layer(1).r, inst.layer(1).r);
  EXPECT_FALSE(twin == inst);
  EXPECT_EQ(ResampleBelow(inst, inst.ell(), 5), inst);
}

TEST(RunBenchTest, SweepWithBruteForceCrossCheck) {
  ExperimentConfig c = Config(Mode::kBench, 12, 1, 50);
  c.sweep = {12, 16, 32};
  const Report rep = RunBench(c);
  EXPECT_TRUE(rep.passed());
  ASSERT_EQ(rep.aggregate.size(), 3u);
  EXPECT_EQ(rep.aggregate[0].at("brute_force_agree"), 50);
  EXPECT_LE(rep.aggregate[2].at("max_alpha").get<double>(), 8.0);
}

TEST(ReportTest, ByteIdenticalAcrossRuns) {
  for (Mode m : {Mode::kVerify, Mode::kDuel, Mode::kParallel, Mode::kHiding,
                 Mode::kBench}) {
    ExperimentConfig c = Config(m, 8, 1, 3);
    c.samples = 5000;
    c.hiding_triples = 20;
    c.seed = 17;
    EXPECT_EQ(RenderReport(sfmlb::Run(c), "json"), RenderReport(sfmlb::Run(c), "json"))
        << ModeName(m);
    EXPECT_EQ(RenderReport(sfmlb::Run(c), "csv"), RenderReport(sfmlb::Run(c), "csv"));
  }
}

TEST(ReportTest, CsvMirrorsAggregate) {
  ExperimentConfig c = Config(Mode::kBench, 8, 1, 2);
  c.sweep = {8, 16};
  const Report rep = RunBench(c);
  const std::string csv = ReportToCsv(rep);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("n,r,trials,", 0), 0u);
  const Json j = ReportToJson(rep);
  EXPECT_EQ(j.at("aggregate"), rep.aggregate);
  EXPECT_EQ(j.at("passed"), true);
}

TEST(ExperimentConfigTest, JsonRoundTripAndOverrides) {
  ExperimentConfig c = Config(Mode::kBench, 32, 2, 7);
  c.sweep = {16, 32};
  c.queries_per_round = 50;
  c.format = "csv";
  const ExperimentConfig back = ExperimentConfigFromJson(
      Json::parse(ExperimentConfigToJson(c).dump()));
  EXPECT_EQ(ExperimentConfigToJson(back), ExperimentConfigToJson(c));
  const ExperimentConfig partial =
      ExperimentConfigFromJson(Json::parse(R"({"n": 10})"), c);
  EXPECT_EQ(partial.n, 10u);
  EXPECT_EQ(partial.trials, 7u);
  EXPECT_THROW(ExperimentConfigFromJson(Json::parse(R"({"n": "x"})")),
               ParseError);
  EXPECT_THROW(ExperimentConfigFromJson(Json::parse(R"({"mode": "x"})")),
               UsageError);
  EXPECT_THROW(ExperimentConfigFromJson(Json::parse("[]")), ParseError);
}

TEST(ExperimentConfigTest, ValidationRejectsBadValues) {
  EXPECT_THROW(ValidateConfig(Config(Mode::kVerify, 8, 1, 0)), UsageError);
  EXPECT_THROW(ValidateConfig(Config(Mode::kVerify, 8, 5, 1)), UsageError);
  ExperimentConfig c = Config(Mode::kVerify, 8, 1, 1);
  c.format = "xml";
  EXPECT_THROW(ValidateConfig(c), UsageError);
  EXPECT_EQ(ModeFromName("hiding"), Mode::kHiding);
  EXPECT_THROW(ModeFromName("fly"), UsageError);
}

}  // namespace
}  // namespace sfmlb
