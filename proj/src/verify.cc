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

#include "sfmlb/verify.h"

#include <string>

#include "sfmlb/errors.h"
#include "sfmlb/rng.h"

namespace sfmlb {
namespace {

void CheckVerifySize(std::size_t n) {
  if (n > kMaxVerifySize) {
    throw UsageError("exhaustive verification refused for n=" +
                     std::to_string(n));
  }
}

Subset WithElement(Subset s, std::size_t e) {
  s.insert(e);
  return s;
}

ViolationWitness PairWitness(std::span<const ExactValue> v, std::size_t n,
                             const PairViolation& p) {
  return {Subset::FromBits(n, p.x), Subset::FromBits(n, p.y), std::nullopt,
          v[p.x] + v[p.y], v[p.x | p.y] + v[p.x & p.y]};
}

ViolationWitness MarginalWitness(std::span<const ExactValue> v, std::size_t n,
                                 const MarginalViolation& m) {
  const std::uint64_t bit = std::uint64_t{1} << m.e;
  return {Subset::FromBits(n, m.x), Subset::FromBits(n, m.y), m.e,
          v[m.y | bit] - v[m.y], v[m.x | bit] - v[m.x]};
}

}  // namespace

bool WitnessHolds(const SetFunction& f, const ViolationWitness& w) {
  if (w.e) {
    if (!w.x.is_subset_of(w.y) || w.y.contains(*w.e)) return false;
    const ExactValue lhs = f(WithElement(w.y, *w.e)) - f(w.y);
    const ExactValue rhs = f(WithElement(w.x, *w.e)) - f(w.x);
    return lhs == w.lhs && rhs == w.rhs && lhs > rhs;
  }
  const ExactValue lhs = f(w.x) + f(w.y);
  const ExactValue rhs = f(w.x | w.y) + f(w.x & w.y);
  return lhs == w.lhs && rhs == w.rhs && lhs < rhs;
}

std::optional<ViolationWitness> CheckSubmodularPairs(
    std::span<const ExactValue> values, std::size_t n, ExecPolicy policy) {
  CheckVerifySize(n);
  if (auto p = FindPairViolation(values, n, policy)) {
    return PairWitness(values, n, *p);
  }
  return std::nullopt;
}

std::optional<ViolationWitness> CheckSubmodularPairs(const SetFunction& f,
                                                     std::size_t n,
                                                     ExecPolicy policy) {
  CheckVerifySize(n);
  const std::vector<ExactValue> values = Tabulate(f, n, policy);
  return CheckSubmodularPairs(values, n, policy);
}

std::optional<ViolationWitness> CheckSubmodularPairsSampled(
    const SetFunction& f, std::size_t n, std::uint64_t samples,
    std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto random_subset = [&]() {
    Subset s(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.Bit()) s.insert(i);
    }
    return s;
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    Subset x = random_subset();
    Subset y = random_subset();
    ExactValue lhs = f(x) + f(y);
    ExactValue rhs = f(x | y) + f(x & y);
    if (lhs < rhs) {
      return ViolationWitness{std::move(x), std::move(y), std::nullopt,
                              std::move(lhs), std::move(rhs)};
    }
  }
  return std::nullopt;
}

std::optional<ViolationWitness> CheckMarginalSubmodular(
    std::span<const ExactValue> values, std::size_t n, ExecPolicy policy) {
  CheckVerifySize(n);
  if (auto m = FindMarginalViolation(values, n, policy)) {
    return MarginalWitness(values, n, *m);
  }
  return std::nullopt;
}

std::optional<ViolationWitness> CheckMarginalSubmodular(const SetFunction& f,
                                                        std::size_t n,
                                                        ExecPolicy policy) {
  CheckVerifySize(n);
  const std::vector<ExactValue> values = Tabulate(f, n, policy);
  return CheckMarginalSubmodular(values, n, policy);
}

PropertyReport CheckFamilyProperties(std::span<const ExactValue> values,
                                 std::size_t n, const Subset& predicted,
                                 ExecPolicy policy) {
  CheckVerifySize(n);
  PropertyReport report;
  report.range_ok = true;
  std::uint64_t best = 0;
  for (std::uint64_t code = 0; code < values.size(); ++code) {
    const ExactValue& v = values[code];
    if (v < ExactValue(0) || v > ExactValue(2)) report.range_ok = false;
    if (v < values[best]) best = code;
  }
  for (const ExactValue& v : values) {
    if (v == values[best]) ++report.argmin_count;
  }
  report.minimizer = Subset::FromBits(n, best);
  report.unique_min_ok = report.argmin_count == 1 && report.minimizer == predicted;
  report.witness = CheckSubmodularPairs(values, n, policy);
  report.submodular_ok = !report.witness.has_value();
  return report;
}

PropertyReport CheckFamilyProperties(const LayeredInstance& inst,
                                 ExecPolicy policy) {
  const std::size_t n = inst.config().n();
  CheckVerifySize(n);
  const std::vector<ExactValue> values = Tabulate(
      [&inst](const Subset& s) { return EvaluateExplicit(inst, s); }, n,
      policy);
  return CheckFamilyProperties(values, n, TrueMinimizer(inst).set, policy);
}

PropertyReport CheckBuildingBlockProperties(std::size_t n, const Subset& a,
                                         const Subset& r,
                                         const ExactValue& bound_m,
                                         const SetFunction& g,
                                         ExecPolicy policy) {
  CheckVerifySize(n);
  const Subset v_mask = Subset::Full(n);
  const Subset b = v_mask - a;
  // Argmin of g over subsets of B.
  std::optional<ExactValue> g_best;
  Subset g_arg(n);
  std::size_t g_ties = 0;
  for (const Subset& s : EnumerateSubsets(n)) {
    if (!s.is_subset_of(b)) continue;
    ExactValue v = g(s);
    if (!g_best || v < *g_best) {
      g_best = v;
      g_arg = s;
      g_ties = 1;
    } else if (v == *g_best) {
      ++g_ties;
    }
  }
  if (g_ties != 1) throw UsageError("inner function has no unique minimizer");
  const std::vector<ExactValue> values = Tabulate(
      [&](const Subset& s) {
        return BuildingBlockValue(v_mask, a, r, bound_m, g, s);
      },
      n, policy);
  return CheckFamilyProperties(values, n, r | g_arg, policy);
}

ViolationWitness FindPhiViolation(const Subset& v_mask, const Subset& a,
                                  const Subset& r) {
  if (!r.is_subset_of(a) || !a.is_subset_of(v_mask)) {
    throw UsageError("need R ⊆ A ⊆ V");
  }
  const Subset b = v_mask - a;
  const std::vector<std::size_t> free = (a - r).indices();
  if (free.size() < 2) {
    throw UsageError("violation pattern needs |A| >= |R| + 2");
  }
  if (b.empty()) throw UsageError("violation pattern needs V \\ A nonempty");
  if (free.size() > 20) throw UsageError("A \\ R too large for pattern search");

  const SetFunction phi = [&](const Subset& s) {
    return SubmodularizerValue(v_mask, a, r, s);
  };
  const std::uint64_t strict_limit = (std::uint64_t{1} << free.size()) - 1;
  for (std::size_t b_elem : b.indices()) {
    const Subset x = WithElement(r, b_elem);
    for (std::uint64_t code = 1; code < strict_limit; ++code) {
      Subset y = x;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if ((code >> i) & 1u) y.insert(free[i]);
      }
      for (std::size_t e : free) {
        if (y.contains(e)) continue;
        ViolationWitness w{x, y, e, phi(WithElement(y, e)) - phi(y),
                           phi(WithElement(x, e)) - phi(x)};
        if (w.lhs > w.rhs && WitnessHolds(phi, w)) return w;
      }
    }
  }
  throw ContractViolation("no submodularizer violation found");
}

ViolationWitness FindPhiViolation(const GroundConfig& config) {
  if (config.r() < 2) {
    throw UsageError("violation pattern is unrealizable for r = 1");
  }
  const std::size_t n = config.n();
  return FindPhiViolation(Subset::Full(n), Subset::Prefix(n, 2 * config.r()),
                          Subset::Prefix(n, config.r()));
}

}  // namespace sfmlb
