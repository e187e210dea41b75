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

// The black-box contract the explainer works against, a reference classifier
// for end-to-end runs, and adapters for externally produced predictions.

#ifndef TRUST_PRIMARY_MODEL_H_
#define TRUST_PRIMARY_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trust/data.h"

namespace trust {

// Anything that maps rows to zero-based class ids. Nothing else about the
// model is visible.
class BlackBoxClassifier {
 public:
  virtual ~BlackBoxClassifier() = default;
  virtual int num_classes() const = 0;
  // One id in [0, num_classes()) per row.
  virtual std::vector<int> Predict(const Dataset& data) const = 0;
};

// Numeric design matrix: standardized quantitative columns and one-hot
// qualitative columns (training dictionary; unseen categories encode as all
// zeros).
class FeatureEncoder {
 public:
  FeatureEncoder() = default;
  static FeatureEncoder Fit(const Dataset& data);

  std::size_t width() const { return width_; }
  const Schema& schema() const { return schema_; }
  // N x width. Throws Error(kPrimaryModel, kSchemaMismatch).
  Eigen::MatrixXd Encode(const Dataset& data) const;

 private:
  Schema schema_;
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<std::vector<std::string>> categories_;
  std::vector<std::size_t> offset_;
  std::size_t width_ = 0;
};

struct ReferenceConfig {
  int epochs = 300;
  double learning_rate = 1.0;
  double l2 = 1e-4;
  std::uint64_t seed = 1;
};

// Multinomial logistic regression fitted by full-batch gradient descent with
// backtracking, so the training loss never increases.
class ReferenceClassifier final : public BlackBoxClassifier {
 public:
  // Throws Error(kPrimaryModel, kDegenerateInput) if only one class occurs.
  static ReferenceClassifier Fit(const LabeledDataset& train,
                                 const ReferenceConfig& config = {});

  int num_classes() const override { return static_cast<int>(weights_.cols()); }
  std::vector<int> Predict(const Dataset& data) const override;
  // N x C class probabilities.
  Eigen::MatrixXd Probabilities(const Dataset& data) const;

  // (width + 1) x C; the last row is the bias.
  const Eigen::MatrixXd& weights() const { return weights_; }
  // Mean cross-entropy (plus penalty) after each epoch, starting with the
  // initial parameters.
  const std::vector<double>& loss_trace() const { return loss_trace_; }

 private:
  FeatureEncoder encoder_;
  Eigen::MatrixXd weights_;
  std::vector<double> loss_trace_;
};

// Replays labels produced elsewhere. Predict only accepts the dataset shape it
// was built for (same row count).
class PredictionsFile final : public BlackBoxClassifier {
 public:
  PredictionsFile(std::vector<int> labels, int num_classes);
  static PredictionsFile Load(const std::filesystem::path& path,
                              std::size_t expected_rows, int num_classes);

  int num_classes() const override { return num_classes_; }
  std::vector<int> Predict(const Dataset& data) const override;
  const std::vector<int>& labels() const { return labels_; }

 private:
  std::vector<int> labels_;
  int num_classes_;
};

// Binary linear rule over quantitative features: class 1 iff w.x + b > 0.
class LinearClassifier final : public BlackBoxClassifier {
 public:
  LinearClassifier(std::vector<double> weights, double bias);

  int num_classes() const override { return 2; }
  std::vector<int> Predict(const Dataset& data) const override;
  const std::vector<double>& coefficients() const { return weights_; }

 private:
  std::vector<double> weights_;
  double bias_;
};

}  // namespace trust

#endif  // TRUST_PRIMARY_MODEL_H_
