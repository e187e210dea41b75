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

// Seeded synthetic labeled tables from a mixture specification written in the
// same JSON syntax as schema sidecars:
//
//   {
//     "rows": 10000,
//     "classes": ["normal", "attack"],
//     "proportions": [0.5, 0.5],
//     "label_column": "label",
//     "features": [
//       {"name": "x", "kind": "quantitative",
//        "per_class": [{"components": [{"weight": 1, "mean": 0, "sigma": 1}]},
//                      {"components": [{"weight": 1, "mean": 10, "sigma": 1}]}]},
//       {"name": "y", "kind": "quantitative", "depends_on": "x", "coef": 0.8,
//        "per_class": [{"components": [{"mean": 0, "sigma": 0.3}]},
//                      {"components": [{"mean": 0, "sigma": 0.3}]}]},
//       {"name": "proto", "kind": "qualitative",
//        "per_class": [{"categories": {"tcp": 0.9, "udp": 0.1}},
//                      {"categories": {"tcp": 0.2, "udp": 0.8}}]}
//     ],
//     "noise": {"quantitative": 10, "qualitative": 0, "categories": 4}
//   }
//
// A dependent column adds coef * (its parent's value) to its own draw.

#ifndef TRUST_SYNTH_H_
#define TRUST_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trust/data.h"

namespace trust {

struct MixtureComponentSpec {
  double weight = 1.0;
  double mean = 0.0;
  double sigma = 1.0;
};

struct ClassColumnSpec {
  std::vector<MixtureComponentSpec> components;
  std::vector<std::pair<std::string, double>> categories;
};

struct SynthFeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::kQuantitative;
  std::string depends_on;
  double coef = 0.0;
  std::vector<ClassColumnSpec> per_class;
};

struct SynthSpec {
  std::size_t rows = 0;
  std::vector<std::string> classes;
  std::vector<double> proportions;
  std::string label_column = "label";
  std::vector<SynthFeatureSpec> features;
  int noise_quantitative = 0;
  int noise_qualitative = 0;
  int noise_categories = 4;

  // Throws Error(kBench, kInvalidArgument) with the offending field.
  void Validate() const;
  Schema MakeSchema() const;
};

SynthSpec ParseSynthSpec(std::string_view json_text);
SynthSpec LoadSynthSpec(const std::filesystem::path& path);
std::string SynthSpecToJson(const SynthSpec& spec);

// Per-class row counts follow the proportions (largest remainder), every class
// gets at least one row, and rows appear in a seeded random class order.
LabeledDataset GenerateSynthetic(const SynthSpec& spec, std::uint64_t seed);

// Two well-separated classes: a two-column informative block (class means 0
// and 10), a class-dependent protocol column and `noise` standard normal
// columns.
SynthSpec SeparableSuiteSpec(std::size_t rows, int noise = 4);

}  // namespace trust

#endif  // TRUST_SYNTH_H_
