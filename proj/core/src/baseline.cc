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

#include "trust/baseline.h"

#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(Stage::kBench, ErrorCode::kInvalidArgument, message);
}

void RequireQuantitative(const Schema& schema) {
  for (const Column& col : schema.features) {
    if (col.kind != FeatureKind::kQuantitative) {
      Fail("local surrogate needs quantitative features; '" + col.name + "' is qualitative");
    }
  }
}

}  // namespace

LocalSurrogate::LocalSurrogate(const BlackBoxClassifier& model, const Dataset& reference)
    : model_(model), schema_(reference.schema()) {
  RequireQuantitative(schema_);
  if (reference.empty()) Fail("local surrogate needs reference rows");
  for (std::size_t j = 0; j < reference.num_features(); ++j) {
    const auto v = reference.quantitative(j);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / static_cast<double>(v.size()));
    scale_.push_back(sd > 0.0 ? sd : 1.0);
  }
}

SurrogateExplanation LocalSurrogate::Explain(const Dataset& samples, std::size_t row,
                                             const SurrogateOptions& options) const {
  const auto start = std::chrono::steady_clock::now();
  if (options.perturbations < kMinPerturbations) {
    Fail("need at least " + std::to_string(kMinPerturbations) + " perturbations");
  }
  if (!samples.schema().SameFeatures(schema_)) Fail("sample schema differs from the reference");
  if (row >= samples.num_rows()) Fail("sample row out of range");
  const std::size_t k = scale_.size();
  const auto n = static_cast<std::size_t>(options.perturbations);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd offsets(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1));
  Dataset probes(schema_);
  probes.Reserve(n + 1);
  for (std::size_t j = 0; j < k; ++j) probes.AppendQuantitative(j, samples.value(row, j));
  probes.CommitRow();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t j = 0; j < k; ++j) {
      const double z = normal(rng);
      offsets(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) = z;
      probes.AppendQuantitative(j, samples.value(row, j) + z * scale_[j]);
    }
    offsets(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k)) = 1.0;
    probes.CommitRow();
  }
  const std::vector<int> labels = model_.Predict(probes);

  SurrogateExplanation out;
  out.target_class = options.target_class >= 0 ? options.target_class : labels[0];
  const double width =
      options.kernel_width > 0.0 ? options.kernel_width : 0.75 * std::sqrt(static_cast<double>(k));
  Eigen::VectorXd weights(static_cast<Eigen::Index>(n));
  Eigen::VectorXd target(static_cast<Eigen::Index>(n));
  for (std::size_t p = 0; p < n; ++p) {
    const auto r = static_cast<Eigen::Index>(p);
    const double d2 = offsets.row(r).head(static_cast<Eigen::Index>(k)).squaredNorm();
    weights(r) = std::exp(-d2 / (width * width));
    target(r) = labels[p + 1] == out.target_class ? 1.0 : 0.0;
  }
  Eigen::MatrixXd gram = offsets.transpose() * weights.asDiagonal() * offsets;
  gram.diagonal().array() += options.ridge;
  const Eigen::VectorXd rhs = offsets.transpose() * (weights.array() * target.array()).matrix();
  const Eigen::VectorXd beta = gram.ldlt().solve(rhs);
  out.coefficients.assign(beta.data(), beta.data() + k);
  out.intercept = beta(static_cast<Eigen::Index>(k));
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace trust
