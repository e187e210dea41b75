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
#include "trust/bench.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "trust/baseline.h"
#include "trust/error.h"
#include "trust/explainer.h"
#include "trust/primary_model.h"

namespace trust {

namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(Stage::kBench, ErrorCode::kInvalidArgument, message);
}

Dataset Head(const Dataset& data, std::size_t rows) {
  std::vector<std::size_t> idx(std::min(rows, data.num_rows()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return data.Select(idx);
}

}  // namespace

SynthSpec ScalingSuiteSpec(std::size_t rows, int noise) {
  SynthSpec spec = SeparableSuiteSpec(rows, noise);
  std::erase_if(spec.features, [](const SynthFeatureSpec& f) {
    return f.kind == FeatureKind::kQualitative;
  });
  return spec;
}

BenchResult RunBench(const BenchConfig& config) {
  if (config.sizes.size() < 2) Fail("bench needs at least two sample sizes");
  if (!std::is_sorted(config.sizes.begin(), config.sizes.end())) {
    Fail("bench sizes must be increasing");
  }
  if (config.repeats < 1 || config.workers < 1) Fail("repeats and workers must be >= 1");
  if (config.baseline_samples == 0) Fail("baseline needs at least one sample");

  BenchResult result;
  const LabeledDataset train =
      GenerateSynthetic(ScalingSuiteSpec(config.build_rows, config.noise_columns), config.seed);
  ReferenceConfig ref_config;
  ref_config.seed = config.seed;
  const ReferenceClassifier model = ReferenceClassifier::Fit(train, ref_config);
  const LabeledDataset primary = MakeLabeled(train.data, model.Predict(train.data), 2);

  BuildOptions options;
  options.k = config.k;
  options.bins = config.bins;
  options.zone = config.zone.lo.empty() ? SearchZone::Uniform(2) : config.zone;
  options.seed = config.seed;
  Stopwatch watch;
  const TrustCore core = BuildCore(primary, options);
  result.build_seconds = watch.Seconds();
  std::size_t build_evals = 0;
  for (const ModeAssignment& m : core.modes) build_evals += m.evaluations;
  result.records.push_back(
      {"build", config.build_rows, core.k(), result.build_seconds, build_evals, 1});

  // Top representative only; fresh scorers so both timings include the fits.
  const auto reps = ExtractRepresentativeValues(primary, 1, config.bins);
  {
    CandidateScorer scorer(reps.front().values, config.seed);
    watch.Reset();
    const ModeAssignment fast = FastGridSelect(scorer, options.zone);
    result.records.push_back(
        {"modes_fast", config.build_rows, 1, watch.Seconds(), fast.evaluations, 1});
    result.fast_evaluations = fast.evaluations;
    result.fast_score = fast.score;
  }
  {
    CandidateScorer scorer(reps.front().values, config.seed);
    watch.Reset();
    const ModeAssignment full = GridModeSelect(scorer, options.zone);
    result.records.push_back(
        {"modes_full", config.build_rows, 1, watch.Seconds(), full.evaluations, 1});
    result.full_evaluations = full.evaluations;
    result.full_score = full.score;
  }

  auto time_explain = [&](const Dataset& samples) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < config.repeats; ++r) {
      watch.Reset();
      const BatchResult batch = ExplainBatch(core, samples, nullptr, config.workers);
      best = std::min(best, watch.Seconds());
      if (batch.explanations.size() != samples.num_rows()) Fail("explain dropped samples");
    }
    return best;
  };

  std::vector<double> xs, ys;
  for (std::size_t n : config.sizes) {
    const LabeledDataset batch = GenerateSynthetic(
        ScalingSuiteSpec(n, config.noise_columns), config.seed + 1 + n);
    const double seconds = time_explain(batch.data);
    result.records.push_back({"explain", n, core.k(), seconds, 0, config.workers});
    xs.push_back(static_cast<double>(n));
    ys.push_back(seconds);
  }
  result.explain_fit = FitLine(xs, ys);

  const LabeledDataset held = GenerateSynthetic(
      ScalingSuiteSpec(config.baseline_samples, config.noise_columns), config.seed + 1);
  const Dataset samples = Head(held.data, config.baseline_samples);
  result.trust_explain_seconds = time_explain(samples);
  result.records.push_back({"trust_batch", samples.num_rows(), core.k(),
                            result.trust_explain_seconds, 0, config.workers});

  const LocalSurrogate surrogate(model, train.data);
  SurrogateOptions sopt;
  sopt.perturbations = config.perturbations;
  watch.Reset();
  for (std::size_t row = 0; row < samples.num_rows(); ++row) {
    sopt.seed = config.seed + row;
    surrogate.Explain(samples, row, sopt);
  }
  result.baseline_seconds = watch.Seconds();
  result.records.push_back(
      {"baseline", samples.num_rows(), 0, result.baseline_seconds, 0, 1});

  result.speedup_explain = result.baseline_seconds / std::max(result.trust_explain_seconds, 1e-12);
  result.speedup_combined =
      result.baseline_seconds / std::max(result.trust_explain_seconds + result.build_seconds, 1e-12);
  return result;
}

std::string BenchResult::ToJson() const {
  nlohmann::ordered_json doc;
  doc["records"] = nlohmann::json::parse(TimingRecordsToJson(records));
  doc["explain_fit"] = {{"slope", explain_fit.slope},
                        {"intercept", explain_fit.intercept},
                        {"r_squared", explain_fit.r_squared}};
  doc["build_seconds"] = build_seconds;
  doc["trust_explain_seconds"] = trust_explain_seconds;
  doc["baseline_seconds"] = baseline_seconds;
  doc["speedup_explain"] = speedup_explain;
  doc["speedup_combined"] = speedup_combined;
  doc["fast_evaluations"] = fast_evaluations;
  doc["full_evaluations"] = full_evaluations;
  doc["fast_score"] = fast_score;
  doc["full_score"] = full_score;
  return doc.dump(2) + "\n";
}

std::string BenchResult::ToText() const {
  std::ostringstream out;
  out << TimingRecordsToText(records);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "explain fit: slope %.3e s/sample, intercept %.3e s, r2 %.4f\n"
                "baseline %.3f s vs trust %.4f s (x%.1f), with build x%.1f\n"
                "mode search evaluations: fast %zu, full %zu\n",
                explain_fit.slope, explain_fit.intercept, explain_fit.r_squared,
                baseline_seconds, trust_explain_seconds, speedup_explain, speedup_combined,
                fast_evaluations, full_evaluations);
  out << buf;
  return out.str();
}

}  // namespace trust
