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

#include "trust/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "trust/error.h"

namespace trust {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& message) {
  throw Error(Stage::kBench, ErrorCode::kInvalidArgument, message);
}

std::vector<std::size_t> ClassCounts(const SynthSpec& spec) {
  const std::size_t c = spec.classes.size();
  std::vector<double> p = spec.proportions;
  if (p.empty()) p.assign(c, 1.0);
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  // One row per class first, the rest by largest remainder.
  const std::size_t rest = spec.rows - c;
  std::vector<std::size_t> counts(c, 1);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < c; ++k) {
    const double share = static_cast<double>(rest) * p[k] / sum;
    const auto whole = static_cast<std::size_t>(std::floor(share));
    counts[k] += whole;
    assigned += whole;
    remainders.emplace_back(share - static_cast<double>(whole), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < rest; ++i, ++assigned) ++counts[remainders[i].second];
  return counts;
}

double DrawMixture(const std::vector<MixtureComponentSpec>& comps, std::mt19937_64& rng) {
  double total = 0.0;
  for (const auto& m : comps) total += m.weight;
  std::uniform_real_distribution<double> uniform(0.0, total);
  const double u = comps.size() == 1 ? 0.0 : uniform(rng);
  double acc = 0.0;
  const MixtureComponentSpec* pick = &comps.back();
  for (const auto& m : comps) {
    acc += m.weight;
    if (u < acc) {
      pick = &m;
      break;
    }
  }
  std::normal_distribution<double> normal(pick->mean, pick->sigma);
  return normal(rng);
}

const std::string& DrawCategory(const std::vector<std::pair<std::string, double>>& cats,
                                std::mt19937_64& rng) {
  double total = 0.0;
  for (const auto& c : cats) total += c.second;
  std::uniform_real_distribution<double> uniform(0.0, total);
  const double u = uniform(rng);
  double acc = 0.0;
  for (const auto& c : cats) {
    acc += c.second;
    if (u < acc) return c.first;
  }
  return cats.back().first;
}

}  // namespace

void SynthSpec::Validate() const {
  if (classes.size() < 2) Fail("synth spec needs at least 2 classes");
  if (rows < 2 * classes.size()) Fail("synth spec needs rows >= 2 * classes");
  if (!proportions.empty()) {
    if (proportions.size() != classes.size()) Fail("proportions must match classes");
    for (double p : proportions) {
      if (!(p > 0.0) || !std::isfinite(p)) Fail("proportions must be positive");
    }
  }
  if (noise_quantitative < 0 || noise_qualitative < 0) Fail("noise counts must be >= 0");
  if (noise_qualitative > 0 && noise_categories < 1) Fail("noise categories must be >= 1");
  if (features.empty() && noise_quantitative + noise_qualitative == 0) {
    Fail("synth spec declares no columns");
  }
  std::vector<std::string> seen;
  for (const SynthFeatureSpec& f : features) {
    if (f.name.empty()) Fail("feature without a name");
    if (f.per_class.size() != classes.size()) {
      Fail("feature '" + f.name + "' needs one entry per class");
    }
    if (!f.depends_on.empty()) {
      if (f.kind != FeatureKind::kQuantitative) Fail("only quantitative features can depend");
      const auto it = std::find_if(features.begin(), features.end(),
                                   [&](const SynthFeatureSpec& g) { return g.name == f.depends_on; });
      if (std::find(seen.begin(), seen.end(), f.depends_on) == seen.end() ||
          it->kind != FeatureKind::kQuantitative) {
        Fail("feature '" + f.name + "' must depend on an earlier quantitative feature");
      }
    }
    for (const ClassColumnSpec& c : f.per_class) {
      if (f.kind == FeatureKind::kQuantitative) {
        if (c.components.empty()) Fail("feature '" + f.name + "' has a class without components");
        for (const auto& m : c.components) {
          if (!(m.sigma > 0.0) || !(m.weight > 0.0) || !std::isfinite(m.mean)) {
            Fail("feature '" + f.name + "' has an invalid component");
          }
        }
      } else {
        if (c.categories.empty()) Fail("feature '" + f.name + "' has a class without categories");
        for (const auto& cat : c.categories) {
          if (!(cat.second > 0.0)) Fail("feature '" + f.name + "' has a non-positive category weight");
        }
      }
    }
    seen.push_back(f.name);
  }
  MakeSchema().Validate();
}

Schema SynthSpec::MakeSchema() const {
  Schema schema;
  for (const SynthFeatureSpec& f : features) schema.features.push_back({f.name, f.kind});
  for (int i = 0; i < noise_quantitative; ++i) {
    schema.features.push_back({"noise_q" + std::to_string(i + 1), FeatureKind::kQuantitative});
  }
  for (int i = 0; i < noise_qualitative; ++i) {
    schema.features.push_back({"noise_c" + std::to_string(i + 1), FeatureKind::kQualitative});
  }
  schema.label_column = label_column;
  schema.class_names = classes;
  return schema;
}

SynthSpec ParseSynthSpec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    Fail(std::string("synth spec is not valid JSON: ") + e.what());
  }
  SynthSpec spec;
  try {
    spec.rows = doc.at("rows").get<std::size_t>();
    spec.classes = doc.at("classes").get<std::vector<std::string>>();
    spec.proportions = doc.value("proportions", std::vector<double>{});
    spec.label_column = doc.value("label_column", std::string("label"));
    for (const json& f : doc.value("features", json::array())) {
      SynthFeatureSpec feature;
      feature.name = f.at("name").get<std::string>();
      const std::string kind = f.value("kind", std::string("quantitative"));
      if (kind == "quantitative") {
        feature.kind = FeatureKind::kQuantitative;
      } else if (kind == "qualitative") {
        feature.kind = FeatureKind::kQualitative;
      } else {
        Fail("feature '" + feature.name + "' has unknown kind '" + kind + "'");
      }
      feature.depends_on = f.value("depends_on", std::string());
      feature.coef = f.value("coef", 0.0);
      for (const json& c : f.at("per_class")) {
        ClassColumnSpec cls;
        for (const json& m : c.value("components", json::array())) {
          cls.components.push_back({m.value("weight", 1.0), m.value("mean", 0.0),
                                    m.value("sigma", 1.0)});
        }
        if (c.contains("categories")) {
          for (const auto& [name, weight] : c.at("categories").items()) {
            cls.categories.emplace_back(name, weight.get<double>());
          }
        }
        feature.per_class.push_back(std::move(cls));
      }
      spec.features.push_back(std::move(feature));
    }
    if (doc.contains("noise")) {
      const json& n = doc.at("noise");
      spec.noise_quantitative = n.value("quantitative", 0);
      spec.noise_qualitative = n.value("qualitative", 0);
      spec.noise_categories = n.value("categories", 4);
    }
  } catch (const json::exception& e) {
    Fail(std::string("synth spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

SynthSpec LoadSynthSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Stage::kBench, ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseSynthSpec(text.str());
}

std::string SynthSpecToJson(const SynthSpec& spec) {
  json doc;
  doc["rows"] = spec.rows;
  doc["classes"] = spec.classes;
  if (!spec.proportions.empty()) doc["proportions"] = spec.proportions;
  doc["label_column"] = spec.label_column;
  doc["features"] = json::array();
  for (const SynthFeatureSpec& f : spec.features) {
    json feature = {{"name", f.name},
                    {"kind", f.kind == FeatureKind::kQuantitative ? "quantitative" : "qualitative"}};
    if (!f.depends_on.empty()) {
      feature["depends_on"] = f.depends_on;
      feature["coef"] = f.coef;
    }
    feature["per_class"] = json::array();
    for (const ClassColumnSpec& c : f.per_class) {
      json cls = json::object();
      if (f.kind == FeatureKind::kQuantitative) {
        cls["components"] = json::array();
        for (const auto& m : c.components) {
          cls["components"].push_back({{"weight", m.weight}, {"mean", m.mean}, {"sigma", m.sigma}});
        }
      } else {
        json cats = json::object();
        for (const auto& [name, weight] : c.categories) cats[name] = weight;
        cls["categories"] = cats;
      }
      feature["per_class"].push_back(cls);
    }
    doc["features"].push_back(feature);
  }
  doc["noise"] = {{"quantitative", spec.noise_quantitative},
                  {"qualitative", spec.noise_qualitative},
                  {"categories", spec.noise_categories}};
  return doc.dump(2) + "\n";
}

LabeledDataset GenerateSynthetic(const SynthSpec& spec, std::uint64_t seed) {
  spec.Validate();
  const std::vector<std::size_t> counts = ClassCounts(spec);
  std::vector<int> labels;
  labels.reserve(spec.rows);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    labels.insert(labels.end(), counts[c], static_cast<int>(c));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(labels.begin(), labels.end(), rng);

  Dataset data(spec.MakeSchema());
  data.Reserve(spec.rows);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < spec.features.size(); ++j) index[spec.features[j].name] = j;
  std::normal_distribution<double> standard(0.0, 1.0);
  std::uniform_int_distribution<int> category(0, std::max(spec.noise_categories, 1) - 1);
  std::vector<double> values(spec.features.size());
  for (int y : labels) {
    std::size_t col = 0;
    for (std::size_t j = 0; j < spec.features.size(); ++j, ++col) {
      const SynthFeatureSpec& f = spec.features[j];
      const ClassColumnSpec& cls = f.per_class[y];
      if (f.kind == FeatureKind::kQuantitative) {
        double v = DrawMixture(cls.components, rng);
        if (!f.depends_on.empty()) v += f.coef * values[index.at(f.depends_on)];
        values[j] = v;
        data.AppendQuantitative(col, v);
      } else {
        data.AppendCategory(col, DrawCategory(cls.categories, rng));
      }
    }
    for (int i = 0; i < spec.noise_quantitative; ++i, ++col) {
      data.AppendQuantitative(col, standard(rng));
    }
    for (int i = 0; i < spec.noise_qualitative; ++i, ++col) {
      data.AppendCategory(col, "c" + std::to_string(category(rng)));
    }
    data.CommitRow();
  }
  return MakeLabeled(std::move(data), std::move(labels), static_cast<int>(spec.classes.size()));
}

SynthSpec SeparableSuiteSpec(std::size_t rows, int noise) {
  SynthSpec spec;
  spec.rows = rows;
  spec.classes = {"normal", "attack"};
  spec.proportions = {0.5, 0.5};
  SynthFeatureSpec x{"x", FeatureKind::kQuantitative, "", 0.0,
                     {{{{1.0, 0.0, 1.0}}, {}}, {{{1.0, 10.0, 1.0}}, {}}}};
  SynthFeatureSpec y{"y", FeatureKind::kQuantitative, "x", 0.8,
                     {{{{1.0, 0.0, 0.5}}, {}}, {{{1.0, 0.0, 0.5}}, {}}}};
  SynthFeatureSpec proto{"proto", FeatureKind::kQualitative, "", 0.0,
                         {{{}, {{"tcp", 0.8}, {"udp", 0.15}, {"icmp", 0.05}}},
                          {{}, {{"tcp", 0.2}, {"udp", 0.3}, {"icmp", 0.5}}}}};
  spec.features = {std::move(x), std::move(y), std::move(proto)};
  spec.noise_quantitative = noise;
  return spec;
}

}  // namespace trust
