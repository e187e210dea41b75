/*
 * Copyright 2026 The Trust Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "run_config.h"

#include <algorithm>
#include <charconv>

#include "json.hpp"
#include "trust/error.h"

namespace trust::cli {

namespace {

[[noreturn]] void Bad(const std::string& field, const std::string& why) {
  throw Error(Stage::kBench, ErrorCode::kInvalidArgument, "--" + field + ": " + why);
}

}  // namespace

void RunConfig::Validate() const {
  if (k < 1) Bad("k", "must be >= 1");
  if (bins < 2) Bad("bins", "must be >= 2");
  if (zone_min < 1) Bad("zone-min", "must be >= 1");
  if (zone_max < zone_min) Bad("zone-max", "must be >= zone-min");
  if (subzone < 1) Bad("subzone", "must be >= 1");
  if (!(ratio > 0.0 && ratio < 1.0)) Bad("ratio", "must lie in (0, 1)");
  if (workers < 1) Bad("workers", "must be >= 1");
  if (points < 2) Bad("points", "must be >= 2");
  if (rep < 0) Bad("rep", "must be >= 0");
  if (noise < 0) Bad("noise", "must be >= 0");
  if (repeats < 1) Bad("repeats", "must be >= 1");
  if (sizes.size() < 2 || !std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    Bad("sizes", "need >= 2 strictly increasing values");
  }
  if (out.empty()) Bad("out", "must not be empty");
}

SearchZone RunConfig::Zone(int num_classes) const {
  return SearchZone::Uniform(num_classes, zone_min, zone_max, subzone);
}

int RunConfig::PositiveClass(const Schema& schema) const {
  if (positive_class.empty()) return schema.num_classes() > 1 ? 1 : 0;
  if (auto named = schema.ClassOf(positive_class)) return *named;
  int id = -1;
  const char* first = positive_class.data();
  const char* last = first + positive_class.size();
  const auto [ptr, ec] = std::from_chars(first, last, id);
  if (ec != std::errc() || ptr != last || id < 0 || id >= schema.num_classes()) {
    Bad("positive-class", "'" + positive_class + "' is neither a class name nor an id");
  }
  return id;
}

std::string RunConfig::ToJson() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["k"] = k;
  doc["bins"] = bins;
  doc["zone"] = {{"lo", zone_min}, {"hi", zone_max}, {"subzone_edge", subzone}};
  doc["seed"] = seed;
  doc["ratio"] = ratio;
  doc["positive_class"] = positive_class;
  doc["paths"] = {{"data", data},
                  {"schema", schema},
                  {"predictions", predictions},
                  {"core", core},
                  {"out", out},
                  {"spec", spec}};
  doc["workers"] = workers;
  doc["reference"] = reference;
  doc["full_search"] = full_search;
  doc["report_rows"] = report_rows;
  doc["rep"] = rep;
  doc["points"] = points;
  doc["rows"] = rows;
  doc["noise"] = noise;
  doc["sizes"] = sizes;
  doc["build_rows"] = build_rows;
  doc["baseline_samples"] = baseline_samples;
  doc["perturbations"] = perturbations;
  doc["repeats"] = repeats;
  return doc.dump(2);
}

}  // namespace trust::cli
