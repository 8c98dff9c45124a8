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

// Command-line front end: sfmlb <verify|duel|parallel|hiding|bench|sample>.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfmlb/errors.h"
#include "sfmlb/harness.h"
#include "sfmlb/hard_family.h"
#include "sfmlb/json_io.h"

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::size_t n = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::string solver;
  std::size_t queries_per_round = 0;
  std::vector<std::size_t> sweep;
  std::uint64_t samples = 0;
  std::size_t triples = 0;
  std::string out;
  std::string format;
  std::string config_path;
};

void AddFlags(CLI::App* sub, Flags& f) {
  sub->add_option("--n", f.n, "Ground set size");
  sub->add_option("--r", f.r, "Half layer width");
  sub->add_option("--seed", f.seed, "Base seed");
  sub->add_option("--trials", f.trials, "Number of trials");
  sub->add_option("--solver", f.solver,
                  "Solver for duel: family_aware or brute_force");
  sub->add_option("--queries-per-round", f.queries_per_round,
                  "Random queries per round for the batched baseline");
  sub->add_option("--sweep", f.sweep, "Ground sizes for bench")
      ->delimiter(',');
  sub->add_option("--samples", f.samples, "Monte-Carlo draws for hiding");
  sub->add_option("--triples", f.triples, "Exact-hiding triples");
  sub->add_option("--out", f.out, "Write the report here instead of stdout");
  sub->add_option("--format", f.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", f.config_path, "JSON experiment config");
}

sfmlb::Json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sfmlb::UsageError("cannot open " + path);
  try {
    return sfmlb::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw sfmlb::ParseError(path + ": " + e.what());
  }
}

sfmlb::ExperimentConfig Resolve(const CLI::App* sub, const Flags& f,
                                sfmlb::Mode mode) {
  sfmlb::ExperimentConfig config;
  config.mode = mode;
  if (sub->count("--config")) {
    config = sfmlb::ExperimentConfigFromJson(LoadJsonFile(f.config_path),
                                             config);
    config.mode = mode;
  }
  if (sub->count("--n")) config.n = f.n;
  if (sub->count("--r")) config.r = f.r;
  if (sub->count("--seed")) config.seed = f.seed;
  if (sub->count("--trials")) config.trials = f.trials;
  if (sub->count("--solver")) config.solver = f.solver;
  if (sub->count("--queries-per-round")) {
    config.queries_per_round = f.queries_per_round;
  }
  if (sub->count("--sweep")) config.sweep = f.sweep;
  if (sub->count("--samples")) config.samples = f.samples;
  if (sub->count("--triples")) config.hiding_triples = f.triples;
  if (sub->count("--out")) config.out = f.out;
  if (sub->count("--format")) config.format = f.format;
  return config;
}

void Emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw sfmlb::UsageError("cannot write " + out);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hard submodular families, adversaries and solvers"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::App*, sfmlb::Mode>> modes;
  for (sfmlb::Mode m : {sfmlb::Mode::kVerify, sfmlb::Mode::kDuel,
                        sfmlb::Mode::kParallel, sfmlb::Mode::kHiding,
                        sfmlb::Mode::kBench}) {
    CLI::App* sub = app.add_subcommand(sfmlb::ModeName(m));
    AddFlags(sub, flags);
    modes.emplace_back(sub, m);
  }
  modes[0].first->description("Check range, minimizer and submodularity");
  modes[1].first->description("Run a solver against the halving adversary");
  modes[2].first->description("Round counts of batched solvers");
  modes[3].first->description("Hit-probability and exact hiding checks");
  modes[4].first->description("Query counts of the family-aware solver");

  CLI::App* sample = app.add_subcommand("sample", "Print a sampled instance");
  std::size_t sample_n = 8, sample_r = 1;
  std::uint64_t sample_seed = 1;
  sample->add_option("--n", sample_n, "Ground set size");
  sample->add_option("--r", sample_r, "Half layer width");
  sample->add_option("--seed", sample_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (sample->parsed()) {
      const sfmlb::LayeredInstance inst = sfmlb::SampleUniformInstance(
          sfmlb::GroundConfig(sample_n, sample_r), sample_seed);
      std::cout << sfmlb::InstanceToJson(inst).dump(2) << "\n";
      return 0;
    }
    for (const auto& [sub, mode] : modes) {
      if (!sub->parsed()) continue;
      const sfmlb::ExperimentConfig config = Resolve(sub, flags, mode);
      const sfmlb::Report report = sfmlb::Run(config);
      Emit(sfmlb::RenderReport(report, config.format), config.out);
      for (const sfmlb::Check& c : report.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": "
                  << c.detail << "\n";
      }
      return report.passed() ? 0 : kExitFailedChecks;
    }
  } catch (const sfmlb::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sfmlb::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailedChecks;
  }
  return kExitUsage;
}
