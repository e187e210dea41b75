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

#include "trust/explainer.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <string>
#include <thread>

#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kExplainer, code, message);
}

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Projects rows of one dataset with every class model, representatives only.
class BatchProjector {
 public:
  BatchProjector(const TrustCore& core, const Dataset& samples) : core_(core) {
    if (!samples.schema().SameFeatures(core.schema)) {
      Fail(ErrorCode::kSchemaMismatch, "samples do not match the core's feature schema");
    }
    projectors_.reserve(core.models.size());
    for (const FactorModel& model : core.models) projectors_.emplace_back(model, samples);
  }

  Explanation Explain(std::size_t row) const {
    const int k = core_.k();
    Eigen::MatrixXd projected(core_.num_classes, k);
    std::vector<double> buffer(static_cast<std::size_t>(k));
    bool unseen = false;
    for (int c = 0; c < core_.num_classes; ++c) {
      unseen |= projectors_[c].Project(row, core_.reps.indices, buffer);
      for (int i = 0; i < k; ++i) projected(c, i) = buffer[i];
    }
    Explanation e = ExplainProjected(core_.densities, core_.reps.normalized_weights, projected);
    e.unseen_category = unseen;
    return e;
  }

 private:
  const TrustCore& core_;
  std::vector<BoundProjector> projectors_;
};

}  // namespace

void TrustCore::Validate() const {
  if (num_classes < 2) Fail(ErrorCode::kInvalidArgument, "core needs at least 2 classes");
  if (static_cast<int>(models.size()) != num_classes) {
    Fail(ErrorCode::kInvalidArgument, "one factor model per class is required");
  }
  if (reps.size() == 0) Fail(ErrorCode::kInvalidArgument, "core has no representatives");
  if (reps.raw_weights.size() != reps.size() ||
      reps.normalized_weights.size() != reps.size()) {
    Fail(ErrorCode::kInvalidArgument, "representative weights do not match indices");
  }
  if (densities.size() != reps.size() || modes.size() != reps.size()) {
    Fail(ErrorCode::kInvalidArgument, "one density row and mode assignment per representative");
  }
  const auto factors = static_cast<int>(schema.num_features());
  for (int idx : reps.indices) {
    if (idx < 0 || idx >= factors) Fail(ErrorCode::kInvalidArgument, "representative index out of range");
  }
  for (const auto& row : densities) {
    if (static_cast<int>(row.size()) != num_classes) {
      Fail(ErrorCode::kInvalidArgument, "one density per class is required");
    }
  }
  for (const FactorModel& model : models) {
    if (static_cast<int>(model.num_factors()) != factors ||
        model.columns.size() != schema.features.size()) {
      Fail(ErrorCode::kInvalidArgument, "factor model does not match the schema");
    }
  }
}

namespace {

struct FactorStage {
  std::vector<FactorModel> models;
  std::vector<FactorScores> scores;
  RepresentativeSet reps;
};

FactorStage FitFactors(const LabeledDataset& labeled, int k, int bins) {
  const auto factors = static_cast<int>(labeled.data.num_features());
  if (k < 1 || k > factors) {
    Fail(ErrorCode::kOutOfRange,
         "k must lie in [1, " + std::to_string(factors) + "], got " + std::to_string(k));
  }
  const ClassPartition partition = PartitionByLabel(labeled);
  FactorStage stage;
  std::vector<int> stacked_labels;
  for (int c = 0; c < labeled.num_classes; ++c) {
    FamdFit fit = FitFamd(partition.parts[c], c, &labeled.data);
    stage.models.push_back(std::move(fit.model));
    stage.scores.push_back(std::move(fit.scores));
    stacked_labels.insert(stacked_labels.end(), partition.parts[c].num_rows(), c);
  }
  stage.reps = PickRepresentatives(stage.scores, stacked_labels, k, bins);
  return stage;
}

std::vector<std::vector<double>> FactorValues(const FactorStage& stage, int factor) {
  std::vector<std::vector<double>> values(stage.scores.size());
  for (std::size_t c = 0; c < stage.scores.size(); ++c) {
    const auto column = stage.scores[c].values.col(factor);
    values[c].assign(column.data(), column.data() + column.size());
  }
  return values;
}

}  // namespace

std::vector<RepresentativeValues> ExtractRepresentativeValues(const LabeledDataset& labeled,
                                                              int k, int bins) {
  labeled.Validate();
  const FactorStage stage = FitFactors(labeled, k, bins);
  std::vector<RepresentativeValues> out;
  for (std::size_t i = 0; i < stage.reps.size(); ++i) {
    const int factor = stage.reps.indices[i];
    out.push_back({factor, stage.reps.normalized_weights[i], FactorValues(stage, factor)});
  }
  return out;
}

TrustCore BuildCore(const LabeledDataset& labeled, const BuildOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  labeled.Validate();
  const int num_classes = labeled.num_classes;
  SearchZone zone = options.zone.lo.empty() ? SearchZone::Uniform(num_classes) : options.zone;
  zone.Validate(num_classes);

  FactorStage stage = FitFactors(labeled, options.k, options.bins);
  TrustCore core;
  core.schema = labeled.data.schema();
  core.num_classes = num_classes;

  for (std::size_t i = 0; i < stage.reps.size(); ++i) {
    const std::vector<std::vector<double>> values = FactorValues(stage, stage.reps.indices[i]);
    CandidateScorer scorer(values, options.seed, options.em);
    ModeAssignment modes =
        options.fast_search ? FastGridSelect(scorer, zone) : GridModeSelect(scorer, zone);
    std::vector<MmgDensity> row;
    for (int c = 0; c < num_classes; ++c) {
      EmFit fit = FitEm(values[c], modes.modes[c], options.seed, options.em);
      fit.density.set_owner(static_cast<int>(i), c);
      row.push_back(std::move(fit.density));
    }
    core.densities.push_back(std::move(row));
    core.modes.push_back(std::move(modes));
  }
  core.models = std::move(stage.models);
  core.reps = std::move(stage.reps);

  core.metadata.seed = options.seed;
  core.metadata.bins = options.bins;
  core.metadata.zone = zone;
  core.metadata.fast_search = options.fast_search;
  core.metadata.created_utc = UtcNow();
  core.metadata.build_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  core.Validate();
  return core;
}

std::vector<int> BatchResult::labels() const {
  std::vector<int> out;
  out.reserve(explanations.size());
  for (const Explanation& e : explanations) out.push_back(e.label);
  return out;
}

Explanation ExplainRow(const TrustCore& core, const Dataset& samples, std::size_t row) {
  if (row >= samples.num_rows()) Fail(ErrorCode::kOutOfRange, "sample row out of range");
  return BatchProjector(core, samples).Explain(row);
}

BatchResult ExplainBatch(const TrustCore& core, const Dataset& samples,
                         const std::vector<int>* primary_labels, int workers) {
  const std::size_t n = samples.num_rows();
  if (primary_labels != nullptr && primary_labels->size() != n) {
    Fail(ErrorCode::kInvalidArgument,
         "expected " + std::to_string(n) + " primary labels, got " +
             std::to_string(primary_labels->size()));
  }
  BatchResult result;
  if (primary_labels != nullptr) result.fidelity.emplace(core.num_classes);
  if (!samples.schema().SameFeatures(core.schema)) {
    Fail(ErrorCode::kSchemaMismatch, "samples do not match the core's feature schema");
  }
  if (n == 0) return result;

  const BatchProjector projector(core, samples);
  result.explanations.resize(n);
  const auto threads = static_cast<std::size_t>(std::clamp(workers, 1, 256));
  if (threads == 1 || n < 2 * threads) {
    for (std::size_t r = 0; r < n; ++r) result.explanations[r] = projector.Explain(r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t r = t; r < n; r += threads) {
            result.explanations[r] = projector.Explain(r);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (result.explanations[r].unseen_category) ++result.unseen_count;
    if (primary_labels != nullptr) {
      result.fidelity->Add((*primary_labels)[r], result.explanations[r].label);
    }
  }
  return result;
}

}  // namespace trust
