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

#include "trust/primary_model.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kPrimaryModel, code, message);
}

// Row-wise softmax in place; returns the mean cross-entropy against labels.
double SoftmaxLoss(Eigen::MatrixXd& logits, const std::vector<int>& labels) {
  double loss = 0.0;
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double shift = logits.row(r).maxCoeff();
    logits.row(r).array() -= shift;
    const double log_norm = std::log(logits.row(r).array().exp().sum());
    loss -= logits(r, labels[r]) - log_norm;
    logits.row(r) = (logits.row(r).array() - log_norm).exp().matrix();
  }
  return loss / static_cast<double>(logits.rows());
}

}  // namespace

FeatureEncoder FeatureEncoder::Fit(const Dataset& data) {
  if (data.empty()) Fail(ErrorCode::kEmptyInput, "cannot fit an encoder on no rows");
  FeatureEncoder enc;
  enc.schema_ = data.schema();
  const std::size_t k = data.num_features();
  enc.mean_.assign(k, 0.0);
  enc.scale_.assign(k, 1.0);
  enc.categories_.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    enc.offset_.push_back(enc.width_);
    if (data.kind(j) == FeatureKind::kQuantitative) {
      const auto v = data.quantitative(j);
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      const double sd = std::sqrt(var / static_cast<double>(v.size()));
      enc.mean_[j] = mean;
      enc.scale_[j] = sd > 0.0 ? sd : 1.0;
      enc.width_ += 1;
    } else {
      enc.categories_[j] = data.categories(j);
      enc.width_ += enc.categories_[j].size();
    }
  }
  return enc;
}

Eigen::MatrixXd FeatureEncoder::Encode(const Dataset& data) const {
  if (!data.schema().SameFeatures(schema_)) {
    Fail(ErrorCode::kSchemaMismatch, "dataset features differ from the training schema");
  }
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(data.num_rows()),
                                            static_cast<Eigen::Index>(width_));
  for (std::size_t j = 0; j < data.num_features(); ++j) {
    const auto col = static_cast<Eigen::Index>(offset_[j]);
    if (data.kind(j) == FeatureKind::kQuantitative) {
      const auto v = data.quantitative(j);
      for (std::size_t r = 0; r < v.size(); ++r) {
        x(static_cast<Eigen::Index>(r), col) = (v[r] - mean_[j]) / scale_[j];
      }
    } else {
      // Map the dataset dictionary onto the training dictionary once.
      const auto& dict = data.categories(j);
      std::vector<Eigen::Index> slot(dict.size(), -1);
      for (std::size_t d = 0; d < dict.size(); ++d) {
        const auto it = std::find(categories_[j].begin(), categories_[j].end(), dict[d]);
        if (it != categories_[j].end()) slot[d] = col + (it - categories_[j].begin());
      }
      const auto codes = data.codes(j);
      for (std::size_t r = 0; r < codes.size(); ++r) {
        if (slot[codes[r]] >= 0) x(static_cast<Eigen::Index>(r), slot[codes[r]]) = 1.0;
      }
    }
  }
  return x;
}

ReferenceClassifier ReferenceClassifier::Fit(const LabeledDataset& train,
                                             const ReferenceConfig& config) {
  train.Validate();
  if (config.epochs < 0 || !(config.learning_rate > 0.0) || config.l2 < 0.0) {
    Fail(ErrorCode::kInvalidArgument, "invalid training configuration");
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(train.num_classes), 0);
  for (int y : train.labels) ++counts[y];
  if (std::count_if(counts.begin(), counts.end(), [](std::size_t n) { return n > 0; }) < 2) {
    Fail(ErrorCode::kDegenerateInput, "training labels contain a single class");
  }

  ReferenceClassifier model;
  model.encoder_ = FeatureEncoder::Fit(train.data);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(train.data.num_rows()),
                    static_cast<Eigen::Index>(model.encoder_.width() + 1));
  x.leftCols(x.cols() - 1) = model.encoder_.Encode(train.data);
  x.col(x.cols() - 1).setOnes();
  const auto n = static_cast<double>(x.rows());
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(x.rows(), train.num_classes);
  for (Eigen::Index r = 0; r < x.rows(); ++r) onehot(r, train.labels[r]) = 1.0;

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 0.01);
  Eigen::MatrixXd w(x.cols(), train.num_classes);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = normal(rng);

  auto penalty = [&](const Eigen::MatrixXd& m) {
    return 0.5 * config.l2 * m.topRows(m.rows() - 1).squaredNorm();
  };
  auto objective = [&](const Eigen::MatrixXd& m, Eigen::MatrixXd* probs) {
    Eigen::MatrixXd logits = x * m;
    const double loss = SoftmaxLoss(logits, train.labels) + penalty(m);
    if (probs != nullptr) *probs = std::move(logits);
    return loss;
  };

  Eigen::MatrixXd probs;
  double loss = objective(w, &probs);
  model.loss_trace_.push_back(loss);
  double step = config.learning_rate;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Eigen::MatrixXd grad = x.transpose() * (probs - onehot) / n;
    grad.topRows(grad.rows() - 1) += config.l2 * w.topRows(w.rows() - 1);
    Eigen::MatrixXd next_probs;
    double next_loss = loss;
    Eigen::MatrixXd candidate;
    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries) {
      candidate = w - step * grad;
      next_loss = objective(candidate, &next_probs);
      if (next_loss <= loss) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      model.loss_trace_.push_back(loss);
      break;
    }
    w = std::move(candidate);
    probs = std::move(next_probs);
    loss = next_loss;
    model.loss_trace_.push_back(loss);
    step = std::min(config.learning_rate, step * 1.25);
  }
  model.weights_ = std::move(w);
  return model;
}

Eigen::MatrixXd ReferenceClassifier::Probabilities(const Dataset& data) const {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(data.num_rows()),
                    static_cast<Eigen::Index>(encoder_.width() + 1));
  x.leftCols(x.cols() - 1) = encoder_.Encode(data);
  x.col(x.cols() - 1).setOnes();
  Eigen::MatrixXd logits = x * weights_;
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    logits.row(r).array() -= logits.row(r).maxCoeff();
    logits.row(r) = logits.row(r).array().exp().matrix();
    logits.row(r) /= logits.row(r).sum();
  }
  return logits;
}

std::vector<int> ReferenceClassifier::Predict(const Dataset& data) const {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(data.num_rows()),
                    static_cast<Eigen::Index>(encoder_.width() + 1));
  x.leftCols(x.cols() - 1) = encoder_.Encode(data);
  x.col(x.cols() - 1).setOnes();
  const Eigen::MatrixXd logits = x * weights_;
  std::vector<int> labels(data.num_rows());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < logits.cols(); ++c) {
      if (logits(r, c) > logits(r, best)) best = c;
    }
    labels[r] = static_cast<int>(best);
  }
  return labels;
}

PredictionsFile::PredictionsFile(std::vector<int> labels, int num_classes)
    : labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ < 2) Fail(ErrorCode::kInvalidArgument, "need at least 2 classes");
  for (std::size_t r = 0; r < labels_.size(); ++r) {
    if (labels_[r] < 0 || labels_[r] >= num_classes_) {
      Fail(ErrorCode::kOutOfRange, "prediction " + std::to_string(labels_[r]) + " at row " +
                                       std::to_string(r + 1) + " is not a class id");
    }
  }
}

PredictionsFile PredictionsFile::Load(const std::filesystem::path& path,
                                      std::size_t expected_rows, int num_classes) {
  return PredictionsFile(LoadPredictions(path, expected_rows, num_classes), num_classes);
}

std::vector<int> PredictionsFile::Predict(const Dataset& data) const {
  if (data.num_rows() != labels_.size()) {
    Fail(ErrorCode::kSchemaMismatch, "predictions cover " + std::to_string(labels_.size()) +
                                         " rows, dataset has " +
                                         std::to_string(data.num_rows()));
  }
  return labels_;
}

LinearClassifier::LinearClassifier(std::vector<double> weights, double bias)
    : weights_(std::move(weights)), bias_(bias) {}

std::vector<int> LinearClassifier::Predict(const Dataset& data) const {
  if (data.num_features() != weights_.size()) {
    Fail(ErrorCode::kSchemaMismatch, "linear model expects " + std::to_string(weights_.size()) +
                                         " features");
  }
  std::vector<double> score(data.num_rows(), bias_);
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (data.kind(j) != FeatureKind::kQuantitative) {
      Fail(ErrorCode::kSchemaMismatch, "linear model needs quantitative features");
    }
    const auto v = data.quantitative(j);
    for (std::size_t r = 0; r < v.size(); ++r) score[r] += weights_[j] * v[r];
  }
  std::vector<int> labels(score.size());
  for (std::size_t r = 0; r < score.size(); ++r) labels[r] = score[r] > 0.0 ? 1 : 0;
  return labels;
}

}  // namespace trust
