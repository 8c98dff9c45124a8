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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sfmlb/harness.h"
#include "sfmlb/hard_family.h"
#include "sfmlb/oracle.h"
#include "sfmlb/rng.h"
#include "sfmlb/solvers.h"
#include "sfmlb/verify.h"

namespace sfmlb {
namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

using SizePairs = std::vector<std::pair<std::size_t, std::size_t>>;

Subset RandomSubset(SplitMix64& rng, std::size_t n) {
  Subset s(n);
  for (std::size_t e = 0; e < n; ++e) {
    if (rng.Bit()) s.insert(e);
  }
  return s;
}

std::string Pair(std::size_t n, std::size_t r) {
  return "(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
}

Outcome StructuralProperties() {
  Outcome out;
  std::size_t instances = 0;
  for (const auto& [n, r] :
       SizePairs{{4, 1}, {6, 1}, {8, 1}, {10, 1}, {4, 2}, {8, 2}}) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const LayeredInstance inst =
          SampleUniformInstance(GroundConfig(n, r), TrialSeed(1000 + n * r, t));
      const PropertyReport rep = CheckFamilyProperties(inst);
      ++instances;
      if (!rep.range_ok) out.Fail("range " + Pair(n, r));
      if (!rep.unique_min_ok || !(rep.minimizer == TrueMinimizer(inst).set)) {
        out.Fail("unique minimizer " + Pair(n, r));
      }
      if (!rep.submodular_ok) out.Fail("submodularity " + Pair(n, r));
    }
  }
  if (out.passed) {
    out.detail = std::to_string(instances) +
                 " instances: exhaustive pairs submodular, range in [0,2], "
                 "unique minimizer = union of R_i";
  }
  return out;
}

Outcome RecursiveExplicitEquivalence() {
  Outcome out;
  std::uint64_t exhaustive = 0;
  for (const auto& [n, r] : SizePairs{{12, 1}, {12, 2}, {12, 3}, {11, 2}}) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const LayeredInstance inst =
          SampleUniformInstance(GroundConfig(n, r), TrialSeed(2000 + n * r, t));
      for (const Subset& s : EnumerateSubsets(n)) {
        ++exhaustive;
        if (!(EvaluateExplicit(inst, s) == EvaluateRecursive(inst, s))) {
          out.Fail("mismatch " + Pair(n, r) + " at " + s.ToString());
        }
      }
    }
  }
  std::uint64_t sampled = 0;
  SplitMix64 rng(2024);
  for (std::size_t r : {1u, 2u, 4u, 12u}) {
    const LayeredInstance inst =
        SampleUniformInstance(GroundConfig(24, r), rng.Next());
    for (int i = 0; i < 10000; ++i) {
      Subset s = RandomSubset(rng, 24);
      // Force agreement on a random prefix of layers so deep layers occur.
      const std::size_t depth = rng.Below(inst.ell() + 1);
      for (std::size_t k = 1; k <= depth; ++k) {
        s -= inst.layer(k).a;
        s |= inst.layer(k).r;
      }
      ++sampled;
      if (!(EvaluateExplicit(inst, s) == EvaluateRecursive(inst, s))) {
        out.Fail("mismatch at n=24 r=" + std::to_string(r) + " " +
                 s.ToString());
      }
    }
  }
  if (out.passed) {
    out.detail = std::to_string(exhaustive) + " exhaustive and " +
                 std::to_string(sampled) + " sampled (n=24) evaluations equal";
  }
  return out;
}

Outcome DeterministicFloor() {
  Outcome out;
  std::string counts;
  const std::vector<std::pair<std::size_t, std::uint64_t>> floors = {
      {8, 4}, {16, 16}, {32, 48}, {64, 128}};
  for (const auto& [n, floor] : floors) {
    if (DeterministicQueryFloor(n) != static_cast<double>(floor)) {
      out.Fail("floor formula at n=" + std::to_string(n));
    }
    AdversaryOracle adv(GroundConfig(n, 1));
    const SolverResult res = FamilyAwareMinimize(adv);
    LayeredInstance fin = adv.Finalize();
    if (res.queries < floor) {
      out.Fail("n=" + std::to_string(n) + " used " +
               std::to_string(res.queries) + " < " + std::to_string(floor));
    }
    if (FirstReplayMismatch(fin, adv.transcript())) {
      out.Fail("replay mismatch at n=" + std::to_string(n));
    }
    if (!(res.minimizer == TrueMinimizer(fin).set)) {
      out.Fail("wrong minimizer at n=" + std::to_string(n));
    }
    counts += (counts.empty() ? "" : ", ") + std::to_string(n) + ":" +
              std::to_string(res.queries) + ">=" + std::to_string(floor);
  }
  out.detail = out.passed ? "queries " + counts + "; replay exact" : out.detail;
  return out;
}

Outcome AdversarySoundness() {
  Outcome out;
  std::uint64_t total_queries = 0, engagements = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    SplitMix64 rng(TrialSeed(4000, t));
    AdversaryOracle adv(GroundConfig(16, 1));
    for (int q = 0; q < 100; ++q) {
      Subset s = RandomSubset(rng, 16);
      if (rng.Bit()) {
        for (const Layer& l : adv.committed()) {
          s -= l.a;
          s |= l.r;
        }
      }
      adv.Answer(s);
    }
    total_queries += adv.transcript().records.size();
    engagements += adv.engagements().size();
    if (FirstHalvingDepthViolation(adv)) out.Fail("halving depth, trial " +
                                                  std::to_string(t));
    try {
      const LayeredInstance fin = adv.Finalize(t);
      if (FirstReplayMismatch(fin, adv.transcript())) {
        out.Fail("replay, trial " + std::to_string(t));
      }
      if (FirstNeverHitViolation(fin, adv)) {
        out.Fail("never-hit, trial " + std::to_string(t));
      }
    } catch (const std::exception& e) {
      out.Fail(std::string("finalize: ") + e.what());
    }
  }
  if (out.passed) {
    out.detail = "100 interactions, " + std::to_string(total_queries) +
                 " queries, " + std::to_string(engagements) +
                 " engaging; never-hit, halving depth and replay hold";
  }
  return out;
}

Outcome UpperBound() {
  Outcome out;
  std::string alphas;
  for (const auto& [n, r] : SizePairs{{16, 1}, {32, 2}, {64, 1}, {64, 8}}) {
    const GroundConfig c(n, r);
    const double budget = 8.0 * n * std::log2(static_cast<double>(n));
    std::uint64_t worst = 0;
    std::size_t correct = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const LayeredInstance inst =
          SampleUniformInstance(c, TrialSeed(5000 + n * r, t));
      const Subset truth = TrueMinimizer(inst).set;
      HonestOracle oracle(inst);
      const SolverResult res = FamilyAwareMinimize(oracle);
      worst = std::max(worst, res.queries);
      bool ok = res.minimizer == truth;
      if (n <= 16) {
        HonestOracle brute_oracle(inst);
        ok = ok && BruteForceMinimize(brute_oracle).minimizer == truth;
      }
      correct += ok;
      if (static_cast<double>(res.queries) > budget) {
        out.Fail(Pair(n, r) + " used " + std::to_string(res.queries));
      }
    }
    if (correct != 100) out.Fail(Pair(n, r) + " " + std::to_string(correct) +
                                 "/100 correct");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s max %llu (alpha %.2f)",
                  Pair(n, r).c_str(), static_cast<unsigned long long>(worst),
                  worst / (n * std::log2(static_cast<double>(n))));
    alphas += (alphas.empty() ? "" : ", ") + std::string(buf);
  }
  out.detail = out.passed ? "100/100 correct each; " + alphas : out.detail;
  return out;
}

Outcome ParallelRounds() {
  Outcome out;
  for (const auto& [n, r] : SizePairs{{16, 2}, {32, 4}, {32, 8}}) {
    const GroundConfig c(n, r);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const LayeredInstance inst =
          SampleUniformInstance(c, TrialSeed(6000 + n * r, t));
      HonestOracle oracle(inst);
      const SolverResult res = SingletonParallelMinimize(oracle);
      if (res.rounds != c.ell()) out.Fail(Pair(n, r) + " rounds");
      if (!(res.minimizer == TrueMinimizer(inst).set)) {
        out.Fail(Pair(n, r) + " wrong minimizer");
      }
    }
  }
  ExperimentConfig hiding;
  hiding.mode = Mode::kHiding;
  hiding.n = 32;
  hiding.r = 8;
  hiding.seed = 6;
  hiding.samples = 1000000;
  hiding.hiding_triples = 1000;
  const Report rep = RunHiding(hiding);
  for (const Check& check : rep.checks) {
    if (!check.passed) out.Fail(check.name + ": " + check.detail);
  }
  if (out.passed) {
    const Json& row = rep.aggregate[0];
    out.detail = "rounds = n/2r, all correct; hiding " +
                 std::to_string(row.at("identical").get<std::size_t>()) +
                 "/1000; hit rate " + std::to_string(row.at("hits").get<std::uint64_t>()) +
                 "/10^6 <= ceiling " +
                 std::to_string(row.at("ceiling").get<double>());
  }
  return out;
}

Outcome PhiViolation() {
  Outcome out;
  const GroundConfig c(6, 2);
  const ViolationWitness w = FindPhiViolation(c);
  const Subset a = Subset::FromIndices(6, {0, 1, 2, 3});
  const Subset r = Subset::FromIndices(6, {0, 1});
  const Subset v = Subset::Full(6);
  const SetFunction phi = [&](const Subset& s) {
    return SubmodularizerValue(v, a, r, s);
  };
  if (!WitnessHolds(phi, w)) out.Fail("witness does not re-verify");
  if (!((w.x & a) == r)) out.Fail("X_A != R");
  const Subset y_a = w.y & a;
  if (!(r.is_subset_of(y_a) && !(y_a == r) && !(y_a == a))) {
    out.Fail("Y_A not strictly between R and A");
  }
  if (!w.e || !a.contains(*w.e) || w.y.contains(*w.e)) {
    out.Fail("e not in A \\ Y_A");
  }
  if ((w.x - a).empty()) out.Fail("X_B empty");
  if (out.passed) {
    out.detail = "X=" + w.x.ToString() + " Y=" + w.y.ToString() +
                 " e=" + std::to_string(*w.e) + " marginals " +
                 w.lhs.ToString() + " > " + w.rhs.ToString();
  }
  return out;
}

}  // namespace
}  // namespace sfmlb

int main() {
  using sfmlb::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {{"structural properties", sfmlb::StructuralProperties},
       {"recursive/explicit equivalence", sfmlb::RecursiveExplicitEquivalence},
       {"deterministic query floor", sfmlb::DeterministicFloor},
       {"adversary soundness", sfmlb::AdversarySoundness},
       {"query upper bound", sfmlb::UpperBound},
       {"parallel round structure", sfmlb::ParallelRounds},
       {"phi non-submodularity", sfmlb::PhiViolation}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.Fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    failures += !out.passed;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n",
                out.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
