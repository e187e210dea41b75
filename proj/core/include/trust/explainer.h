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

// The persisted explainer: built once from data and predicted labels, then
// used to explain any number of samples.

#ifndef TRUST_EXPLAINER_H_
#define TRUST_EXPLAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trust/data.h"
#include "trust/famd.h"
#include "trust/metrics.h"
#include "trust/mmg.h"
#include "trust/modesearch.h"
#include "trust/reps.h"

namespace trust {

inline constexpr std::uint32_t kCoreFormatVersion = 1;

struct BuildOptions {
  int k = 8;
  int bins = kDefaultBins;
  // Empty bounds mean 1..20 for every class.
  SearchZone zone;
  // Sub-zone search; otherwise the full grid.
  bool fast_search = true;
  std::uint64_t seed = 42;
  EmOptions em;
};

struct BuildMetadata {
  std::uint64_t seed = 0;
  int bins = kDefaultBins;
  SearchZone zone;
  bool fast_search = true;
  std::uint32_t format_version = kCoreFormatVersion;
  // ISO-8601 UTC.
  std::string created_utc;
  double build_seconds = 0.0;
};

struct TrustCore {
  Schema schema;
  int num_classes = 0;
  // models[c] is class c's factor model.
  std::vector<FactorModel> models;
  RepresentativeSet reps;
  // densities[i][c]: representative i, class c.
  DensityGrid densities;
  // modes[i]: the search result for representative i.
  std::vector<ModeAssignment> modes;
  BuildMetadata metadata;

  int k() const { return static_cast<int>(reps.size()); }
  // Throws Error(kExplainer, kInvalidArgument) if the parts are inconsistent.
  void Validate() const;
};

// Partition, per-class factor analysis, representative selection, mode search
// and the final EM fits. Errors keep the stage that raised them.
TrustCore BuildCore(const LabeledDataset& labeled, const BuildOptions& options);

// Per-class factor scores of the top-k representatives, as fed to mode search.
struct RepresentativeValues {
  int factor = 0;
  double weight = 0.0;
  std::vector<std::vector<double>> values;
};

std::vector<RepresentativeValues> ExtractRepresentativeValues(const LabeledDataset& labeled,
                                                              int k, int bins = kDefaultBins);

struct BatchResult {
  std::vector<Explanation> explanations;
  // Explainer labels against the primary labels, when those were given.
  std::optional<ConfusionMatrix> fidelity;
  std::size_t unseen_count = 0;

  std::vector<int> labels() const;
};

// Order-preserving. Throws Error(kExplainer, kSchemaMismatch) if the samples
// use different features, and Error(kExplainer, kInvalidArgument) if the
// primary labels do not line up with the rows.
BatchResult ExplainBatch(const TrustCore& core, const Dataset& samples,
                         const std::vector<int>* primary_labels = nullptr,
                         int workers = 1);

// Single row of `samples`.
Explanation ExplainRow(const TrustCore& core, const Dataset& samples,
                       std::size_t row);

// Container: magic, format version, payload size, payload, CRC-32. Doubles are
// stored as their IEEE bytes so a round trip is bit-exact.
std::string SerializeCore(const TrustCore& core);
// Throws Error(kPersistence, kCorrupted | kVersionMismatch | kSchemaMismatch).
// The schema check runs only when `expected` is given.
TrustCore DeserializeCore(std::string_view bytes, const Schema* expected = nullptr);
void SaveCore(const TrustCore& core, const std::filesystem::path& path);
TrustCore LoadCore(const std::filesystem::path& path,
                   const Schema* expected = nullptr);

struct ReportRow {
  std::size_t sample = 0;
  // k x C per-representative log-likelihoods.
  Eigen::MatrixXd log_likelihood;
  // Per representative, the class with the larger log-likelihood.
  std::vector<int> winners;
  std::vector<double> totals;
  int label = 0;
  double margin = 0.0;
  // Some representative's winner differs from the final label.
  bool split = false;
  bool unseen_category = false;
};

struct ExplanationReport {
  std::vector<std::string> class_names;
  std::vector<int> factors;
  std::vector<double> weights;
  std::vector<ReportRow> rows;

  std::string ToText() const;
  std::string ToJson() const;
};

// `samples[j]` is the dataset row that produced explanations[j].
ExplanationReport MakeReport(const TrustCore& core,
                             std::span<const Explanation> explanations,
                             std::span<const std::size_t> samples = {});

struct Curve {
  int class_id = 0;
  std::vector<GaussianComponent> components;
  std::vector<double> x;
  std::vector<double> pdf;
};

struct CurveExport {
  int rep_index = 0;
  int factor = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<Curve> curves;

  // Parameters block followed by "x pdf" lines per class.
  std::string ToText() const;
  std::string ToJson() const;
};

// Every class's density for representative `rep` on a shared grid spanning
// all mu +- 8 sigma. Throws Error(kExplainer, kOutOfRange) for a bad index.
CurveExport ExportCurves(const TrustCore& core, int rep, int points = 512);

}  // namespace trust

#endif  // TRUST_EXPLAINER_H_
