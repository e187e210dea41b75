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
#include "commands.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "trust/bench.h"
#include "trust/error.h"
#include "trust/explainer.h"
#include "trust/metrics.h"
#include "trust/primary_model.h"
#include "trust/synth.h"

namespace trust::cli {

namespace {

[[noreturn]] void Missing(const std::string& flag, const std::string& command) {
  throw Error(Stage::kBench, ErrorCode::kInvalidArgument,
              command + " requires --" + flag);
}

void Require(const std::string& value, const std::string& flag, const RunConfig& config) {
  if (value.empty()) Missing(flag, config.command);
}

std::string PredictionsText(std::span<const int> labels) {
  std::ostringstream out;
  WritePredictions(out, labels);
  return out.str();
}

std::string CsvText(const Dataset& data, const std::vector<int>* labels) {
  std::ostringstream out;
  WriteCsv(out, data, labels);
  return out.str();
}

// Data parsed with the core's own schema unless --schema is given, in which
// case the core must agree with it.
TrustCore LoadCoreFor(const RunConfig& config, Schema* schema) {
  Require(config.core, "core", config);
  if (!config.schema.empty()) {
    *schema = LoadSchema(config.schema);
    return LoadCore(config.core, schema);
  }
  TrustCore core = LoadCore(config.core);
  *schema = core.schema;
  return core;
}

std::string ExplanationsJson(const BatchResult& batch) {
  nlohmann::ordered_json doc;
  doc["unseen_count"] = batch.unseen_count;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < batch.explanations.size(); ++i) {
    const Explanation& e = batch.explanations[i];
    std::vector<double> totals;
    for (const ClassLikelihood& c : e.per_class) totals.push_back(c.total);
    rows.push_back({{"sample", i},
                    {"label", e.label},
                    {"margin", e.margin},
                    {"totals", totals},
                    {"unseen_category", e.unseen_category}});
  }
  doc["explanations"] = std::move(rows);
  return doc.dump(2) + "\n";
}

nlohmann::ordered_json ModeAssignmentJson(const ModeAssignment& m) {
  nlohmann::ordered_json doc;
  doc["modes"] = m.modes;
  doc["score"] = m.score;
  doc["evaluations"] = m.evaluations;
  doc["insufficient_data"] = m.insufficient_data;
  return doc;
}

}  // namespace

Outputs::Outputs(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) {
    throw Error(Stage::kBench, ErrorCode::kIo,
                "cannot create output directory '" + root_.string() + "': " + ec.message());
  }
}

void Outputs::Write(const std::string& name, const std::string& content) {
  const std::filesystem::path path = Path(name);
  std::ofstream file(path, std::ios::binary);
  file << content;
  file.close();
  if (!file) {
    throw Error(Stage::kBench, ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  files_.push_back(name);
}

void RunSynth(const RunConfig& config, Outputs& out) {
  const SynthSpec spec = config.spec.empty() ? SeparableSuiteSpec(config.rows, config.noise)
                                             : LoadSynthSpec(config.spec);
  const LabeledDataset data = GenerateSynthetic(spec, config.seed);
  out.Write("data.csv", CsvText(data.data, &data.labels));
  out.Write("schema.json", SchemaToJson(spec.MakeSchema()));
  out.Write("spec.json", SynthSpecToJson(spec));
  std::cout << "synth: " << data.data.num_rows() << " rows, " << data.data.num_features()
            << " features\n";
}

void RunBuild(const RunConfig& config, Outputs& out) {
  Require(config.data, "data", config);
  Require(config.schema, "schema", config);
  const Schema schema = LoadSchema(config.schema);
  LabeledDataset build_set;
  std::vector<int> primary;

  if (config.reference) {
    const LabeledDataset all = LoadLabeledCsv(config.data, schema);
    auto [train, test] = TrainTestSplit(all, config.ratio, config.seed);
    ReferenceConfig rc;
    rc.seed = config.seed;
    const ReferenceClassifier model = ReferenceClassifier::Fit(train, rc);
    primary = model.Predict(train.data);
    const std::vector<int> test_pred = model.Predict(test.data);
    out.Write("train.csv", CsvText(train.data, &train.labels));
    out.Write("test.csv", CsvText(test.data, &test.labels));
    out.Write("train.pred", PredictionsText(primary));
    out.Write("test.pred", PredictionsText(test_pred));
    const ConfusionMatrix cm = ConfusionMatrix::FromLabels(test.labels, test_pred, all.num_classes);
    out.Write("reference_metrics.json",
              MetricsToJson(cm, config.PositiveClass(schema), schema.class_names));
    std::cout << "reference classifier test accuracy " << Accuracy(cm) << "\n";
    build_set = std::move(train);
  } else {
    Require(config.predictions, "predictions", config);
    const Dataset data = LoadCsv(config.data, schema);
    primary = LoadPredictions(config.predictions, data.num_rows(), schema.num_classes());
    build_set.data = data;
  }
  const LabeledDataset labeled =
      MakeLabeled(std::move(build_set.data), primary, schema.num_classes());

  BuildOptions options;
  options.k = config.k;
  options.bins = config.bins;
  options.zone = config.Zone(schema.num_classes());
  options.fast_search = !config.full_search;
  options.seed = config.seed;
  const TrustCore core = BuildCore(labeled, options);
  SaveCore(core, out.Path("core.trust"));
  out.Record("core.trust");

  nlohmann::ordered_json summary;
  summary["rows"] = labeled.data.num_rows();
  summary["representatives"] = core.reps.indices;
  summary["weights"] = core.reps.normalized_weights;
  nlohmann::ordered_json modes = nlohmann::ordered_json::array();
  for (const ModeAssignment& m : core.modes) modes.push_back(ModeAssignmentJson(m));
  summary["modes"] = std::move(modes);
  out.Write("build.json", summary.dump(2) + "\n");
  std::cout << "build: k=" << core.k() << " over " << labeled.data.num_rows() << " rows in "
            << core.metadata.build_seconds << " s\n";
}

void RunExplain(const RunConfig& config, Outputs& out) {
  Require(config.data, "data", config);
  Schema schema;
  const TrustCore core = LoadCoreFor(config, &schema);
  const Dataset data = LoadCsv(config.data, schema);
  const BatchResult batch = ExplainBatch(core, data, nullptr, config.workers);
  out.Write("explanations.pred", PredictionsText(batch.labels()));
  out.Write("explanations.json", ExplanationsJson(batch));

  const std::size_t shown = std::min(config.report_rows, batch.explanations.size());
  const ExplanationReport report = MakeReport(
      core, std::span<const Explanation>(batch.explanations.data(), shown));
  out.Write("report.txt", report.ToText());
  out.Write("report.json", report.ToJson());
  std::cout << "explain: " << batch.explanations.size() << " samples, " << batch.unseen_count
            << " with unseen categories\n";
}

void RunEvaluate(const RunConfig& config, Outputs& out) {
  Require(config.data, "data", config);
  Require(config.predictions, "predictions", config);
  Schema schema;
  const TrustCore core = LoadCoreFor(config, &schema);
  const Dataset data = LoadCsv(config.data, schema);
  const std::vector<int> primary =
      LoadPredictions(config.predictions, data.num_rows(), core.num_classes);
  const BatchResult batch = ExplainBatch(core, data, &primary, config.workers);
  const int positive = config.PositiveClass(core.schema);
  out.Write("metrics.json", MetricsToJson(*batch.fidelity, positive, core.schema.class_names));
  out.Write("metrics.txt", MetricsToText(*batch.fidelity, positive, core.schema.class_names));
  std::cout << MetricsToText(*batch.fidelity, positive, core.schema.class_names);
}

void RunModes(const RunConfig& config, Outputs& out) {
  Require(config.data, "data", config);
  Require(config.schema, "schema", config);
  Require(config.predictions, "predictions", config);
  const Schema schema = LoadSchema(config.schema);
  const Dataset data = LoadCsv(config.data, schema);
  const LabeledDataset labeled = MakeLabeled(
      data, LoadPredictions(config.predictions, data.num_rows(), schema.num_classes()),
      schema.num_classes());
  const SearchZone zone = config.Zone(schema.num_classes());
  const auto reps = ExtractRepresentativeValues(labeled, config.k, config.bins);

  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  std::ostringstream text;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-5s%-8s%-24s%-10s%-8s%-24s%-10s%-8s\n", "rep", "factor",
                "fast modes", "score", "evals", "full modes", "score", "evals");
  text << buf;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    CandidateScorer scorer(reps[i].values, config.seed);
    const ModeAssignment fast = FastGridSelect(scorer, zone);
    const ModeAssignment full = GridModeSelect(scorer, zone);
    doc.push_back({{"rep", i},
                   {"factor", reps[i].factor},
                   {"fast", ModeAssignmentJson(fast)},
                   {"full", ModeAssignmentJson(full)}});
    auto join = [](const std::vector<int>& v) {
      std::string s;
      for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
      return s;
    };
    std::snprintf(buf, sizeof(buf), "%-5zu%-8d%-24s%-10.4f%-8zu%-24s%-10.4f%-8zu\n", i,
                  reps[i].factor, join(fast.modes).c_str(), fast.score, fast.evaluations,
                  join(full.modes).c_str(), full.score, full.evaluations);
    text << buf;
  }
  out.Write("modes.json", doc.dump(2) + "\n");
  out.Write("modes.txt", text.str());
  std::cout << text.str();
}

void RunCurves(const RunConfig& config, Outputs& out) {
  Schema schema;
  const TrustCore core = LoadCoreFor(config, &schema);
  const CurveExport curves = ExportCurves(core, config.rep, config.points);
  out.Write("curves.json", curves.ToJson());
  out.Write("curves.txt", curves.ToText());
  std::cout << "curves: representative " << config.rep << " (factor " << curves.factor
            << "), " << config.points << " points per class\n";
}

void RunBench(const RunConfig& config, Outputs& out) {
  BenchConfig bench;
  bench.sizes = config.sizes;
  bench.build_rows = config.build_rows;
  bench.k = config.k;
  bench.bins = config.bins;
  bench.zone = config.Zone(2);
  bench.seed = config.seed;
  bench.workers = config.workers;
  bench.repeats = config.repeats;
  bench.baseline_samples = config.baseline_samples;
  bench.perturbations = config.perturbations;
  bench.noise_columns = config.noise;
  const BenchResult result = trust::RunBench(bench);
  out.Write("timing.json", result.ToJson());
  out.Write("timing.txt", result.ToText());
  std::cout << result.ToText();
}

}  // namespace trust::cli
