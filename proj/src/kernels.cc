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

#include "sfmlb/kernels.h"

#include <omp.h>

#include <atomic>
#include <exception>
#include <string>

#include "sfmlb/errors.h"

namespace sfmlb {
namespace {

void CheckTable(std::span<const ExactValue> values, std::size_t n) {
  if (n > kMaxExhaustiveScanSize) {
    throw UsageError("exhaustive scan refused for n=" + std::to_string(n));
  }
  if (values.size() != (std::uint64_t{1} << n)) {
    throw UsageError("value table has wrong size for n=" + std::to_string(n));
  }
}

bool Comparable(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t both = x & y;
  return both == x || both == y;
}

// Scratch rationals so the inner loops do not allocate.
struct PairScratch {
  mpq_class lhs;
  mpq_class rhs;

  bool Violates(std::span<const ExactValue> v, std::uint64_t x,
                std::uint64_t y) {
    mpq_add(lhs.get_mpq_t(), v[x].raw().get_mpq_t(), v[y].raw().get_mpq_t());
    mpq_add(rhs.get_mpq_t(), v[x | y].raw().get_mpq_t(),
            v[x & y].raw().get_mpq_t());
    return mpq_cmp(lhs.get_mpq_t(), rhs.get_mpq_t()) < 0;
  }
};

std::optional<std::uint64_t> FirstPartner(std::span<const ExactValue> v,
                                          std::uint64_t x, std::uint64_t total,
                                          PairScratch& scratch) {
  for (std::uint64_t y = x + 1; y < total; ++y) {
    if (Comparable(x, y)) continue;
    if (scratch.Violates(v, x, y)) return y;
  }
  return std::nullopt;
}

// marginals[code * n + e] = v[code | e] - v[code] for e outside code.
std::vector<mpq_class> Marginals(std::span<const ExactValue> v, std::size_t n,
                                 bool parallel) {
  const std::int64_t total = std::int64_t{1} << n;
  std::vector<mpq_class> out(static_cast<std::size_t>(total) * n);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t code = 0; code < total; ++code) {
    const auto c = static_cast<std::uint64_t>(code);
    for (std::size_t e = 0; e < n; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if (c & bit) continue;
      mpq_sub(out[c * n + e].get_mpq_t(), v[c | bit].raw().get_mpq_t(),
              v[c].raw().get_mpq_t());
    }
  }
  return out;
}

// First x ⊆ y (ascending) whose marginal for e is below that at y.
std::optional<std::uint64_t> FirstLowerMarginal(
    const std::vector<mpq_class>& d, std::size_t n, std::uint64_t y,
    std::size_t e) {
  const mpq_class& at_y = d[y * n + e];
  // Submasks of y in ascending order: x = (x - y) & y starting from 0.
  std::uint64_t x = 0;
  for (;;) {
    if (x != y && cmp(d[x * n + e], at_y) < 0) return x;
    if (x == y) break;
    x = (x - y) & y;
  }
  return std::nullopt;
}

std::optional<MarginalViolation> FirstMarginalAt(
    const std::vector<mpq_class>& d, std::size_t n, std::uint64_t y) {
  for (std::size_t e = 0; e < n; ++e) {
    if (y & (std::uint64_t{1} << e)) continue;
    if (auto x = FirstLowerMarginal(d, n, y, e)) {
      return MarginalViolation{*x, y, e};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<ExactValue> TabulateSerial(
    const std::function<ExactValue(const Subset&)>& fn, std::size_t n) {
  const SubsetRange range(n);
  std::vector<ExactValue> out;
  out.reserve(range.size());
  for (const Subset& s : range) out.push_back(fn(s));
  return out;
}

std::vector<ExactValue> TabulateParallel(
    const std::function<ExactValue(const Subset&)>& fn, std::size_t n) {
  const SubsetRange range(n);
  const auto total = static_cast<std::int64_t>(range.size());
  std::vector<ExactValue> out(range.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t code = 0; code < total; ++code) {
    try {
      out[code] = fn(Subset::FromBits(n, static_cast<std::uint64_t>(code)));
    } catch (...) {
#pragma omp critical(sfmlb_tabulate_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<ExactValue> Tabulate(
    const std::function<ExactValue(const Subset&)>& fn, std::size_t n,
    ExecPolicy policy) {
  return policy == ExecPolicy::kSerial ? TabulateSerial(fn, n)
                                       : TabulateParallel(fn, n);
}

std::optional<PairViolation> FindPairViolationSerial(
    std::span<const ExactValue> values, std::size_t n) {
  CheckTable(values, n);
  const std::uint64_t total = values.size();
  PairScratch scratch;
  for (std::uint64_t x = 0; x < total; ++x) {
    for (std::uint64_t y = x + 1; y < total; ++y) {
      if (Comparable(x, y)) continue;
      if (scratch.Violates(values, x, y)) return PairViolation{x, y};
    }
  }
  return std::nullopt;
}

std::optional<PairViolation> FindPairViolationParallel(
    std::span<const ExactValue> values, std::size_t n) {
  CheckTable(values, n);
  const std::uint64_t total = values.size();
  std::atomic<std::uint64_t> best_x{total};
  std::uint64_t best_y = 0;
#pragma omp parallel
  {
    PairScratch scratch;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t signed_x = 0; signed_x < static_cast<std::int64_t>(total);
         ++signed_x) {
      const auto x = static_cast<std::uint64_t>(signed_x);
      if (x > best_x.load(std::memory_order_relaxed)) continue;
      if (auto y = FirstPartner(values, x, total, scratch)) {
#pragma omp critical(sfmlb_pair_best)
        if (x < best_x.load()) {
          best_x.store(x);
          best_y = *y;
        }
      }
    }
  }
  if (best_x.load() == total) return std::nullopt;
  return PairViolation{best_x.load(), best_y};
}

std::optional<PairViolation> FindPairViolation(
    std::span<const ExactValue> values, std::size_t n, ExecPolicy policy) {
  return policy == ExecPolicy::kSerial ? FindPairViolationSerial(values, n)
                                       : FindPairViolationParallel(values, n);
}

std::optional<MarginalViolation> FindMarginalViolationSerial(
    std::span<const ExactValue> values, std::size_t n) {
  CheckTable(values, n);
  const std::vector<mpq_class> d = Marginals(values, n, false);
  for (std::uint64_t y = 0; y < values.size(); ++y) {
    if (auto found = FirstMarginalAt(d, n, y)) return found;
  }
  return std::nullopt;
}

std::optional<MarginalViolation> FindMarginalViolationParallel(
    std::span<const ExactValue> values, std::size_t n) {
  CheckTable(values, n);
  const std::vector<mpq_class> d = Marginals(values, n, true);
  const std::uint64_t total = values.size();
  std::atomic<std::uint64_t> best_y{total};
  MarginalViolation best{};
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t signed_y = 0; signed_y < static_cast<std::int64_t>(total);
       ++signed_y) {
    const auto y = static_cast<std::uint64_t>(signed_y);
    if (y > best_y.load(std::memory_order_relaxed)) continue;
    if (auto found = FirstMarginalAt(d, n, y)) {
#pragma omp critical(sfmlb_marginal_best)
      if (y < best_y.load()) {
        best_y.store(y);
        best = *found;
      }
    }
  }
  if (best_y.load() == total) return std::nullopt;
  return best;
}

std::optional<MarginalViolation> FindMarginalViolation(
    std::span<const ExactValue> values, std::size_t n, ExecPolicy policy) {
  return policy == ExecPolicy::kSerial
             ? FindMarginalViolationSerial(values, n)
             : FindMarginalViolationParallel(values, n);
}

}  // namespace sfmlb
