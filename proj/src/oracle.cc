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

#include "sfmlb/oracle.h"

#include <algorithm>
#include <bit>
#include <exception>
#include <string>
#include <utility>

#include "sfmlb/errors.h"
#include "sfmlb/rng.h"

namespace sfmlb {
namespace {

class ExclusiveUse {
 public:
  explicit ExclusiveUse(std::atomic<bool>& busy) : busy_(busy) {
    if (busy_.exchange(true)) {
      throw UsageError("adversary oracle used concurrently");
    }
  }
  ~ExclusiveUse() { busy_.store(false); }
  ExclusiveUse(const ExclusiveUse&) = delete;
  ExclusiveUse& operator=(const ExclusiveUse&) = delete;

 private:
  std::atomic<bool>& busy_;
};

void CheckQuery(const GroundConfig& config, const Subset& s) {
  if (s.ground_size() != config.n()) {
    throw UsageError("query over ground size " +
                     std::to_string(s.ground_size()) + ", oracle has " +
                     std::to_string(config.n()));
  }
}

std::size_t FloorLog2(std::size_t m) {
  return m == 0 ? 0 : static_cast<std::size_t>(std::bit_width(m)) - 1;
}

}  // namespace

std::optional<std::size_t> FirstReplayMismatch(const LayeredInstance& inst,
                                               const Transcript& transcript) {
  for (std::size_t i = 0; i < transcript.records.size(); ++i) {
    const QueryRecord& rec = transcript.records[i];
    if (!(EvaluateExplicit(inst, rec.query) == rec.value)) return i;
  }
  return std::nullopt;
}

std::vector<ExactValue> Oracle::AnswerBatch(std::span<const Subset> batch) {
  std::vector<ExactValue> out;
  out.reserve(batch.size());
  for (const Subset& s : batch) out.push_back(Answer(s));
  return out;
}

HonestOracle::HonestOracle(LayeredInstance inst, bool record_transcript)
    : inst_(std::move(inst)), record_(record_transcript) {}

ExactValue HonestOracle::Answer(const Subset& s) {
  CheckQuery(config(), s);
  ExactValue value = EvaluateExplicit(inst_, s);
  const std::uint64_t index = queries_.fetch_add(1);
  if (record_) {
    std::lock_guard<std::mutex> lock(mu_);
    records_.push_back({index, rounds_.load(), s, value});
  }
  return value;
}

std::vector<ExactValue> HonestOracle::AnswerBatch(
    std::span<const Subset> batch) {
  std::vector<ExactValue> out(batch.size());
  std::exception_ptr error;
  const auto size = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 32) if (size > 256)
  for (std::int64_t i = 0; i < size; ++i) {
    try {
      out[i] = Answer(batch[i]);
    } catch (...) {
#pragma omp critical(sfmlb_batch_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

void HonestOracle::BeginRound() { rounds_.fetch_add(1); }

OracleStats HonestOracle::stats() const {
  return {queries_.load(), rounds_.load()};
}

Transcript HonestOracle::transcript() const {
  std::lock_guard<std::mutex> lock(mu_);
  Transcript out{config(), records_};
  std::sort(out.records.begin(), out.records.end(),
            [](const QueryRecord& a, const QueryRecord& b) {
              return a.index < b.index;
            });
  return out;
}

const char* AdversaryBranchName(AdversaryBranch branch) {
  switch (branch) {
    case AdversaryBranch::kNone:
      return "none";
    case AdversaryBranch::kBoth:
      return "both";
    case AdversaryBranch::kCommitOnContact:
      return "commit_on_contact";
  }
  return "?";
}

AdversaryOracle::AdversaryOracle(const GroundConfig& config)
    : config_(config),
      pool_(Subset::Full(config.n())),
      active_(Subset::Full(config.n())),
      audits_(config.ell()),
      transcript_{config, {}} {
  if (config.r() != 1) {
    throw UsageError("halving adversary supports r = 1 only");
  }
  if (config.n() % 2 != 0) throw UsageError("halving adversary needs even n");
  for (std::size_t k = 1; k <= config.ell(); ++k) {
    audits_[k - 1].ground_size = PoolSize(config, k);
  }
}

ExactValue AdversaryOracle::Answer(const Subset& s) {
  ExclusiveUse guard(busy_);
  CheckQuery(config_, s);
  const std::uint64_t index = transcript_.records.size();
  ExactValue value = Respond(s, index);
  transcript_.records.push_back({index, rounds_, s, value});
  return value;
}

void AdversaryOracle::BeginRound() {
  ExclusiveUse guard(busy_);
  ++rounds_;
}

OracleStats AdversaryOracle::stats() const {
  return {transcript_.records.size(), rounds_};
}

ExactValue AdversaryOracle::CommittedLayerValue(std::size_t k,
                                                const Subset& s) const {
  const Layer& layer = committed_[k - 1];
  const Subset& pool = committed_pools_[k - 1];
  const Relation relation = Relate(s & layer.a, layer.r);
  const auto beyond =
      static_cast<std::int64_t>(((s & pool) - layer.a).cardinality());
  const auto pool_size = static_cast<std::int64_t>(pool.cardinality());
  ExactValue inner;
  switch (relation) {
    case Relation::kEqual:
      inner = ExactValue(0);
      break;
    case Relation::kStrictSubset:
      inner = ExactValue(1) + ExactValue(beyond, 2 * pool_size);
      break;
    case Relation::kStrictSuperset:
      inner = ExactValue(1) - ExactValue(beyond, 2 * pool_size);
      break;
    case Relation::kIncomparable:
      inner = ExactValue(2);
      break;
  }
  return LayerCoefficient(config_, k) * inner;
}

ExactValue AdversaryOracle::Respond(const Subset& s, std::uint64_t index) {
  for (std::size_t k = 1; k <= committed_.size(); ++k) {
    const Layer& layer = committed_[k - 1];
    if (!((s & layer.a) == layer.r)) return CommittedLayerValue(k, s);
  }
  if (fully_committed()) return ExactValue(0);

  const std::size_t k = active_layer();
  LayerAudit& audit = audits_[k - 1];
  if (active_.cardinality() <= 3) {
    // Only a two-element last layer opens this small. Halving could leave a
    // single candidate, so commit now and pick R to miss the query.
    std::vector<std::size_t> pair = active_.lowest(2);
    Subset a = Subset::FromIndices(config_.n(), pair);
    const Subset hit = s & a;
    std::size_t r_elem = pair[0];
    if (hit.cardinality() == 1) r_elem = (a - hit).lowest(1)[0];
    ++audit.engaging_queries;
    engagements_.push_back({index, k, AdversaryBranch::kCommitOnContact});
    Commit(std::move(a), Subset::FromIndices(config_.n(), {r_elem}), true);
    return CommittedLayerValue(k, s);
  }

  const ExactValue c = LayerCoefficient(config_, k);
  const auto pool_size = static_cast<std::int64_t>(pool_.cardinality());
  const auto in_pool = static_cast<std::int64_t>((s & pool_).cardinality());
  const std::size_t overlap = (active_ & s).cardinality();
  ExactValue value;
  AdversaryBranch branch;
  if (2 * overlap >= active_.cardinality()) {
    // S_A = A: f = 1, phi = -(|S ∩ B_k| - 2).
    value = c * (ExactValue(1) - ExactValue(in_pool - 2, 2 * pool_size));
    active_ &= s;
    branch = AdversaryBranch::kBoth;
  } else {
    // S_A = ∅: f = 1, phi = +|S ∩ B_k|.
    value = c * (ExactValue(1) + ExactValue(in_pool, 2 * pool_size));
    active_ -= s;
    branch = AdversaryBranch::kNone;
  }
  ++audit.engaging_queries;
  engagements_.push_back({index, k, branch});
  if (active_.cardinality() <= 3) {
    std::vector<std::size_t> pair = active_.lowest(2);
    Commit(Subset::FromIndices(config_.n(), pair),
           Subset::FromIndices(config_.n(), {pair[0]}), true);
  }
  return value;
}

void AdversaryOracle::Commit(Subset a, Subset r, bool by_query) {
  audits_[committed_.size()].committed_by_query = by_query;
  committed_pools_.push_back(pool_);
  pool_ -= a;
  committed_.push_back({std::move(a), std::move(r)});
  active_ = pool_;
}

LayeredInstance AdversaryOracle::Finalize(std::optional<std::uint64_t> seed) {
  ExclusiveUse guard(busy_);
  std::optional<SplitMix64> rng;
  if (seed) rng.emplace(*seed);
  while (!fully_committed()) {
    const std::size_t k = active_layer();
    const bool engaged = audits_[k - 1].engaging_queries > 0;
    std::vector<std::size_t> pair;
    std::size_t r_elem;
    if (rng && !engaged) {
      pair = rng->Choose(active_.indices(), 2);
      std::sort(pair.begin(), pair.end());
      r_elem = pair[rng->Below(2)];
    } else {
      pair = active_.lowest(2);
      r_elem = pair[0];
    }
    Commit(Subset::FromIndices(config_.n(), pair),
           Subset::FromIndices(config_.n(), {r_elem}), false);
  }
  LayeredInstance inst(config_, committed_);
  if (auto bad = FirstReplayMismatch(inst, transcript_)) {
    throw ConsistencyError("transcript record " + std::to_string(*bad) +
                           " does not replay on the finalized instance");
  }
  if (auto bad = FirstNeverHitViolation(inst, *this)) {
    throw ConsistencyError("engaging query " + std::to_string(*bad) +
                           " hit R of its layer");
  }
  return inst;
}

std::optional<std::size_t> FirstNeverHitViolation(
    const LayeredInstance& inst, const AdversaryOracle& adversary) {
  const auto& records = adversary.transcript().records;
  const auto engagements = adversary.engagements();
  for (std::size_t i = 0; i < engagements.size(); ++i) {
    const Engagement& e = engagements[i];
    const Layer& layer = inst.layer(e.layer);
    if ((records.at(e.record_index).query & layer.a) == layer.r) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FirstHalvingDepthViolation(
    const AdversaryOracle& adversary) {
  const auto audits = adversary.audits();
  for (std::size_t i = 0; i < audits.size(); ++i) {
    const LayerAudit& audit = audits[i];
    if (!audit.committed_by_query) continue;
    const std::size_t floor_log = FloorLog2(audit.ground_size);
    const std::size_t needed = floor_log >= 1 ? floor_log - 1 : 0;
    if (audit.engaging_queries < needed) return i + 1;
  }
  return std::nullopt;
}

}  // namespace sfmlb
