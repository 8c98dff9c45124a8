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

#include "sfmlb/json_io.h"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfmlb/errors.h"

namespace sfmlb {
namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::size_t SizeField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_unsigned()) {
    throw ParseError(std::string("field \"") + key +
                     "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Json SubsetToJson(const Subset& s) {
  Json out = Json::array();
  for (std::size_t i : s.indices()) out.push_back(i);
  return out;
}

Subset SubsetFromJson(const Json& j, std::size_t ground_size) {
  if (!j.is_array()) throw ParseError("subset must be an index array");
  Subset s(ground_size);
  std::optional<std::size_t> previous;
  for (const Json& e : j) {
    if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
      throw ParseError("subset index must be a non-negative integer");
    }
    const auto i = e.get<std::size_t>();
    if (i >= ground_size) throw ParseError("subset index out of range");
    if (previous && i <= *previous) {
      throw ParseError("subset indices must be strictly increasing");
    }
    previous = i;
    s.insert(i);
  }
  return s;
}

Json ValueToJson(const ExactValue& v) { return v.ToString(); }

ExactValue ValueFromJson(const Json& j) {
  if (!j.is_string()) throw ParseError("value must be a \"p/q\" string");
  return ExactValue::Parse(j.get<std::string>());
}

Json ConfigToJson(const GroundConfig& config) {
  return Json{{"n", config.n()}, {"r", config.r()}};
}

GroundConfig ConfigFromJson(const Json& j) {
  return GroundConfig(SizeField(j, "n"), SizeField(j, "r"));
}

Json InstanceToJson(const LayeredInstance& inst) {
  Json layers = Json::array();
  for (const Layer& layer : inst.layers()) {
    layers.push_back(
        Json{{"A", SubsetToJson(layer.a)}, {"R", SubsetToJson(layer.r)}});
  }
  return Json{{"n", inst.config().n()},
              {"r", inst.config().r()},
              {"layers", std::move(layers)}};
}

LayeredInstance InstanceFromJson(const Json& j) {
  const GroundConfig config = ConfigFromJson(j);
  const Json& layers_json = Field(j, "layers");
  if (!layers_json.is_array()) throw ParseError("\"layers\" must be an array");
  std::vector<Layer> layers;
  for (const Json& lj : layers_json) {
    layers.push_back({SubsetFromJson(Field(lj, "A"), config.n()),
                      SubsetFromJson(Field(lj, "R"), config.n())});
  }
  return LayeredInstance(config, std::move(layers));
}

Json TranscriptToJson(const Transcript& t) {
  Json records = Json::array();
  for (const QueryRecord& rec : t.records) {
    records.push_back(Json{{"index", rec.index},
                           {"round", rec.round},
                           {"query", SubsetToJson(rec.query)},
                           {"value", ValueToJson(rec.value)}});
  }
  return Json{{"config", ConfigToJson(t.config)},
              {"records", std::move(records)}};
}

Transcript TranscriptFromJson(const Json& j) {
  Transcript t{ConfigFromJson(Field(j, "config")), {}};
  const Json& records = Field(j, "records");
  if (!records.is_array()) throw ParseError("\"records\" must be an array");
  for (const Json& rj : records) {
    t.records.push_back({SizeField(rj, "index"), SizeField(rj, "round"),
                         SubsetFromJson(Field(rj, "query"), t.config.n()),
                         ValueFromJson(Field(rj, "value"))});
  }
  return t;
}

Json SolverResultToJson(const SolverResult& result) {
  return Json{{"solver", result.solver},
              {"minimizer", SubsetToJson(result.minimizer)},
              {"value", ValueToJson(result.min_value)},
              {"queries", result.queries},
              {"rounds", result.rounds},
              {"measured_alpha", result.measured_alpha}};
}

Json WitnessToJson(const ViolationWitness& w) {
  Json out{{"X", SubsetToJson(w.x)}, {"Y", SubsetToJson(w.y)}};
  out["e"] = w.e ? Json(*w.e) : Json(nullptr);
  out["kind"] = w.e ? "marginal" : "pair";
  out["lhs"] = ValueToJson(w.lhs);
  out["rhs"] = ValueToJson(w.rhs);
  return out;
}

}  // namespace sfmlb
