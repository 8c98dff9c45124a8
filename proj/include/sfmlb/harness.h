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

#ifndef SFMLB_HARNESS_H_
#define SFMLB_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sfmlb/exact_value.h"
#include "sfmlb/hard_family.h"
#include "sfmlb/json_io.h"

namespace sfmlb {

enum class Mode { kVerify, kDuel, kParallel, kHiding, kBench };

const char* ModeName(Mode mode);
Mode ModeFromName(std::string_view name);

struct ExperimentConfig {
  Mode mode = Mode::kVerify;
  std::size_t n = 8;
  std::size_t r = 1;
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  // Random queries per round for the batched baseline; 0 means n.
  std::size_t queries_per_round = 0;
  std::string solver = "family_aware";
  // bench: ground sizes to sweep; empty means {n}.
  std::vector<std::size_t> sweep;
  // hiding: Monte-Carlo draws and exact-hiding triples.
  std::uint64_t samples = 1000000;
  std::size_t hiding_triples = 1000;
  std::string out;
  std::string format = "json";
};

// Throws UsageError on invalid or mode-incompatible fields.
void ValidateConfig(const ExperimentConfig& config);
Json ExperimentConfigToJson(const ExperimentConfig& config);
// Fields absent from j keep their value from base.
ExperimentConfig ExperimentConfigFromJson(const Json& j,
                                          ExperimentConfig base = {});

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  // Transcript, witness or instance needed to replay a failure.
  Json evidence;
};

struct Report {
  ExperimentConfig config;
  Json trials = Json::array();
  // Table of flat rows; the CSV form is exactly this table.
  Json aggregate = Json::array();
  std::vector<Check> checks;
  std::string note;

  bool passed() const;
};

Json ReportToJson(const Report& report);
std::string ReportToCsv(const Report& report);
// format is "json" or "csv".
std::string RenderReport(const Report& report, std::string_view format);

struct VerifyHooks {
  // Applied to each tabulated value table before the checks run. Tests use
  // it to plant a corrupted value.
  std::function<void(std::vector<ExactValue>&)> corrupt_table;
};

Report RunVerify(const ExperimentConfig& config, const VerifyHooks& hooks = {});
Report RunDuel(const ExperimentConfig& config);
Report RunParallel(const ExperimentConfig& config);
Report RunHiding(const ExperimentConfig& config);
Report RunBench(const ExperimentConfig& config);
Report Run(const ExperimentConfig& config);

// (n/2) log2(n/4), clamped at 0.
double DeterministicQueryFloor(std::size_t n);

// Keeps layers 1..keep of inst and redraws the deeper layers uniformly from
// the remaining pool.
LayeredInstance ResampleBelow(const LayeredInstance& inst, std::size_t keep,
                              std::uint64_t seed);

struct HitRateEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

// Draws (A_1, R_1) uniformly and S with each element included
// independently with probability 1/2; counts S ∩ A_1 = R_1.
HitRateEstimate EstimateHitRate(const GroundConfig& config,
                                std::uint64_t samples, std::uint64_t seed);

}  // namespace sfmlb

#endif  // SFMLB_HARNESS_H_
