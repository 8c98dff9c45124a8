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

#ifndef SFMLB_JSON_IO_H_
#define SFMLB_JSON_IO_H_

// JSON forms of the library types. Subsets are sorted index lists, values
// are reduced "p/q" strings.
//
//   instance:   { "n", "r", "layers": [ {"A": [...], "R": [...]} ] }
//   transcript: { "config": {"n", "r"},
//                 "records": [ {"index", "round", "query": [...],
//                               "value": "p/q"} ] }

#include <cstddef>

#include "json.hpp"
#include "sfmlb/hard_family.h"
#include "sfmlb/oracle.h"
#include "sfmlb/solvers.h"
#include "sfmlb/subset.h"
#include "sfmlb/verify.h"

namespace sfmlb {

using Json = nlohmann::ordered_json;

Json SubsetToJson(const Subset& s);
// Throws ParseError on non-integer entries, UsageError on out-of-range ones.
Subset SubsetFromJson(const Json& j, std::size_t ground_size);

Json ValueToJson(const ExactValue& v);
ExactValue ValueFromJson(const Json& j);

Json ConfigToJson(const GroundConfig& config);
GroundConfig ConfigFromJson(const Json& j);

Json InstanceToJson(const LayeredInstance& inst);
LayeredInstance InstanceFromJson(const Json& j);

Json TranscriptToJson(const Transcript& t);
Transcript TranscriptFromJson(const Json& j);

Json SolverResultToJson(const SolverResult& result);
Json WitnessToJson(const ViolationWitness& w);

}  // namespace sfmlb

#endif  // SFMLB_JSON_IO_H_
