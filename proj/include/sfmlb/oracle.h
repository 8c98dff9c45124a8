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

#ifndef SFMLB_ORACLE_H_
#define SFMLB_ORACLE_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "sfmlb/exact_value.h"
#include "sfmlb/hard_family.h"
#include "sfmlb/subset.h"

namespace sfmlb {

struct OracleStats {
  std::uint64_t queries = 0;
  std::uint64_t rounds = 0;
};

struct QueryRecord {
  std::uint64_t index;
  std::uint64_t round;
  Subset query;
  ExactValue value;
};

struct Transcript {
  GroundConfig config;
  std::vector<QueryRecord> records;
};

// Index of the first record whose value differs from EvaluateExplicit on
// inst, or nullopt if the whole transcript replays exactly.
std::optional<std::size_t> FirstReplayMismatch(const LayeredInstance& inst,
                                               const Transcript& transcript);

// What an SFM algorithm sees: value queries grouped into rounds. A round is
// every query issued between two BeginRound calls; an adaptive algorithm
// calls BeginRound before each query.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual const GroundConfig& config() const = 0;
  virtual ExactValue Answer(const Subset& s) = 0;
  // Answers in submission order. The default issues sequential Answer calls.
  virtual std::vector<ExactValue> AnswerBatch(std::span<const Subset> batch);
  virtual void BeginRound() = 0;
  virtual OracleStats stats() const = 0;
};

// Evaluates a fixed instance. Answer and AnswerBatch may be called from
// several threads within a round; counters are atomic.
class HonestOracle : public Oracle {
 public:
  explicit HonestOracle(LayeredInstance inst, bool record_transcript = false);

  const GroundConfig& config() const override { return inst_.config(); }
  ExactValue Answer(const Subset& s) override;
  std::vector<ExactValue> AnswerBatch(std::span<const Subset> batch) override;
  void BeginRound() override;
  OracleStats stats() const override;

  const LayeredInstance& instance() const { return inst_; }
  // Records sorted by index. Empty unless recording was requested.
  Transcript transcript() const;

 private:
  LayeredInstance inst_;
  bool record_;
  std::atomic<std::uint64_t> queries_{0};
  std::atomic<std::uint64_t> rounds_{0};
  mutable std::mutex mu_;
  std::vector<QueryRecord> records_;
};

enum class AdversaryBranch {
  // Answered as if S_A = ∅; the active set drops every queried element.
  kNone,
  // Answered as if S_A = A; the active set keeps only queried elements.
  kBoth,
  // Layer had only two candidates left; committed on contact with R chosen
  // to miss the query, then answered honestly.
  kCommitOnContact,
};

const char* AdversaryBranchName(AdversaryBranch branch);

// A query that reached a layer before that layer was committed.
struct Engagement {
  std::uint64_t record_index;
  std::size_t layer;
  AdversaryBranch branch;
};

struct LayerAudit {
  std::size_t ground_size = 0;
  std::size_t engaging_queries = 0;
  // False if the layer was committed by Finalize rather than by a query.
  bool committed_by_query = false;
};

// Active-set halving adversary for r = 1, extended across all layers.
//
// Layers are resolved in order. A query diverging at a committed layer is
// answered from committed data. A query matching every committed layer
// engages the active layer with active set U: if |U ∩ S| >= |U|/2 it is
// answered as though A ⊆ S and U shrinks to U ∩ S, otherwise as though
// A ∩ S = ∅ and U shrinks to U \ S. Once |U| <= 3 the layer commits to the
// two lowest elements of U with R their lowest, and the next layer opens on
// the remaining pool. Each answer stays consistent with every A ⊆ U, so no
// engaging query ever hits R.
//
// Strictly sequential: overlapping calls throw UsageError.
class AdversaryOracle : public Oracle {
 public:
  // Requires r = 1 and n even; throws UsageError otherwise.
  explicit AdversaryOracle(const GroundConfig& config);

  const GroundConfig& config() const override { return config_; }
  ExactValue Answer(const Subset& s) override;
  void BeginRound() override;
  OracleStats stats() const override;

  std::span<const Layer> committed() const { return committed_; }
  // The active set U of the active layer; empty once fully committed.
  const Subset& active_set() const { return active_; }
  // 1-based; ell + 1 once every layer is committed.
  std::size_t active_layer() const { return committed_.size() + 1; }
  bool fully_committed() const { return committed_.size() == config_.ell(); }
  const Transcript& transcript() const { return transcript_; }
  std::span<const Engagement> engagements() const { return engagements_; }
  // Indexed by layer - 1.
  std::span<const LayerAudit> audits() const { return audits_; }

  // Commits every remaining layer: A = two lowest of the active set (or of
  // the remaining pool), R = lowest of A. With a seed, layers that no query
  // has engaged are drawn uniformly instead. Later answers are honest for
  // the result. Throws ConsistencyError if the transcript does not replay
  // exactly or an engaging query hit a committed R.
  LayeredInstance Finalize(std::optional<std::uint64_t> seed = std::nullopt);

 private:
  ExactValue Respond(const Subset& s, std::uint64_t index);
  ExactValue CommittedLayerValue(std::size_t k, const Subset& s) const;
  void Commit(Subset a, Subset r, bool by_query);

  GroundConfig config_;
  std::vector<Layer> committed_;
  std::vector<Subset> committed_pools_;
  Subset pool_;
  Subset active_;
  std::vector<LayerAudit> audits_;
  std::vector<Engagement> engagements_;
  Transcript transcript_;
  std::uint64_t rounds_ = 0;
  std::atomic<bool> busy_{false};
};

// Index into adversary.engagements() of the first engaging query whose set
// hit R of its layer in inst, or nullopt.
std::optional<std::size_t> FirstNeverHitViolation(
    const LayeredInstance& inst, const AdversaryOracle& adversary);

// Layer (1-based) whose query-driven commit took fewer than
// floor(log2 m) - 1 engaging queries for ground size m, or nullopt.
std::optional<std::size_t> FirstHalvingDepthViolation(
    const AdversaryOracle& adversary);

}  // namespace sfmlb

#endif  // SFMLB_ORACLE_H_
