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
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "commands.h"
#include "json.hpp"
#include "run_config.h"
#include "trust/error.h"
#include "trust/explainer.h"
#include "trust/timing.h"

namespace {

using trust::cli::Outputs;
using trust::cli::RunConfig;

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteManifest(Outputs& out, const RunConfig& config, const std::string& started,
                   const std::string& status, const std::string& message) {
  nlohmann::ordered_json doc;
  doc["tool"] = "trust";
  doc["core_format_version"] = trust::kCoreFormatVersion;
  doc["status"] = status;
  if (!message.empty()) doc["error"] = message;
  doc["config"] = nlohmann::ordered_json::parse(config.ToJson());
  doc["machine"] = trust::MachineDescription();
  doc["started_utc"] = started;
  doc["finished_utc"] = UtcNow();
  doc["outputs"] = out.files();
  std::ofstream(out.Path("manifest.json")) << doc.dump(2) << "\n";
}

void AddRunOptions(CLI::App& app, RunConfig& c) {
  app.add_option("--k", c.k, "Number of representatives")->envname("TRUST_K");
  app.add_option("--bins", c.bins, "Histogram bins for mutual information")
      ->envname("TRUST_BINS");
  app.add_option("--zone-min", c.zone_min, "Smallest mode count searched")
      ->envname("TRUST_ZONE_MIN");
  app.add_option("--zone-max", c.zone_max, "Largest mode count searched")
      ->envname("TRUST_ZONE_MAX");
  app.add_option("--subzone", c.subzone, "Sub-zone edge of the fast search")
      ->envname("TRUST_SUBZONE");
  app.add_option("--seed", c.seed, "Random seed")->envname("TRUST_SEED");
  app.add_option("--ratio", c.ratio, "Training share of the split")->envname("TRUST_RATIO");
  app.add_option("--positive-class", c.positive_class, "Class name or id scored as positive")
      ->envname("TRUST_POSITIVE_CLASS");
  app.add_option("--data", c.data, "CSV data file")->envname("TRUST_DATA");
  app.add_option("--schema", c.schema, "Schema sidecar JSON")->envname("TRUST_SCHEMA");
  app.add_option("--predictions", c.predictions, "Black-box labels, one 0-based id per row")
      ->envname("TRUST_PREDICTIONS");
  app.add_option("--core", c.core, "Core file")->envname("TRUST_CORE");
  app.add_option("--out", c.out, "Output directory")->envname("TRUST_OUT");
  app.add_option("--workers", c.workers, "Explain worker threads")->envname("TRUST_WORKERS");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trust: statistical explanations of black-box classifiers"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig config;
  AddRunOptions(app, config);

  std::map<std::string, std::function<void(const RunConfig&, Outputs&)>> commands;
  auto add = [&](const std::string& name, const std::string& help, auto fn) {
    commands[name] = fn;
    return app.add_subcommand(name, help);
  };

  auto* synth = add("synth", "Write a labeled synthetic CSV and its schema", trust::cli::RunSynth);
  synth->add_option("--spec", config.spec, "Mixture spec JSON; default is the separable suite");
  synth->add_option("--rows", config.rows, "Rows of the default suite");
  synth->add_option("--noise", config.noise, "Noise columns of the default suite");

  auto* build = add("build", "Build a core from data and black-box labels", trust::cli::RunBuild);
  build->add_flag("--reference", config.reference,
                  "Split by --ratio and label with the built-in reference classifier");
  build->add_flag("--full-search", config.full_search, "Exhaustive mode search");

  auto* explain = add("explain", "Explain every row of --data", trust::cli::RunExplain);
  explain->add_option("--report-rows", config.report_rows, "Rows shown in the report");

  add("evaluate", "Fidelity of the core against --predictions", trust::cli::RunEvaluate);
  add("modes", "Fast and full mode search per representative", trust::cli::RunModes);

  auto* curves = add("curves", "Density curves of one representative", trust::cli::RunCurves);
  curves->add_option("--rep", config.rep, "Representative index");
  curves->add_option("--points", config.points, "Points per curve");

  auto* bench = add("bench", "Timing harness on synthetic data", trust::cli::RunBench);
  bench->add_option("--sizes", config.sizes, "Explain batch sizes")->delimiter(',');
  bench->add_option("--build-rows", config.build_rows, "Rows used to build the core");
  bench->add_option("--baseline-samples", config.baseline_samples,
                    "Samples explained by the surrogate baseline");
  bench->add_option("--perturbations", config.perturbations, "Surrogate perturbations");
  bench->add_option("--repeats", config.repeats, "Timed passes per size");
  bench->add_option("--noise", config.noise, "Noise columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  config.command = app.get_subcommands().front()->get_name();
  // Bench defaults to the two-representative suite unless --k was given.
  if (config.command == "bench" && app.count("--k") == 0) config.k = 2;

  const std::string started = UtcNow();
  std::unique_ptr<Outputs> out;
  try {
    config.Validate();
    out = std::make_unique<Outputs>(config.out);
    commands.at(config.command)(config, *out);
    WriteManifest(*out, config, started, "ok", "");
  } catch (const trust::Error& e) {
    // what() already leads with "stage: code:".
    const std::string message = e.what();
    std::cerr << "trust " << config.command << ": " << message << "\n";
    if (out) WriteManifest(*out, config, started, "error", message);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "trust " << config.command << ": internal: " << e.what() << "\n";
    if (out) WriteManifest(*out, config, started, "error", e.what());
    return 1;
  }
  return 0;
}
