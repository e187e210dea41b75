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

// Per-class factor analysis of mixed data.
//
// Each column is reduced to one standardized coordinate: quantitative columns
// by z-scoring, qualitative columns by scoring their categories along the
// direction of the column's indicator space most associated with the other
// columns (an optimal-scaling quantification). The relation matrix is the
// correlation matrix of those coordinates. For two quantitative columns its
// entry is the Pearson correlation, whose square is the association strength;
// with all-quantitative data the factorization is exactly PCA of the
// standardized data. The relation matrix is factorized by SVD, giving K
// orthonormal factor directions.
//
// Factor scores are reported relative to a common reference center (the
// pooled training population) so that differences in class location survive
// the per-class standardization.

#ifndef TRUST_FAMD_H_
#define TRUST_FAMD_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trust/data.h"

namespace trust {

enum class AssociationKind {
  kPearsonSquared,
  kCramerVSquared,
  kCorrelationRatioSquared,
};

AssociationKind AssociationKindOf(FeatureKind a, FeatureKind b);

struct ColumnView {
  FeatureKind kind = FeatureKind::kQuantitative;
  std::span<const double> values;
  std::span<const std::int32_t> codes;

  std::size_t size() const {
    return kind == FeatureKind::kQuantitative ? values.size() : codes.size();
  }
  static ColumnView Of(const Dataset& data, std::size_t col);
};

// rho^2 for two quantitative columns, Cramer's V^2 for two qualitative ones,
// eta^2 (correlation ratio) for a mixed pair. All lie in [0, 1]. A
// zero-variance column has association 0 with anything.
double Association(const ColumnView& a, const ColumnView& b);

struct RelationMatrix {
  // Correlations between the per-column standardized coordinates.
  Eigen::MatrixXd values;
  // Row-major K x K tags.
  std::vector<AssociationKind> kinds;

  AssociationKind kind(std::size_t i, std::size_t j) const {
    return kinds[i * static_cast<std::size_t>(values.cols()) + j];
  }
  // Elementwise square of `values`: non-negative association strengths.
  Eigen::MatrixXd Strengths() const { return values.array().square().matrix(); }
};

struct ColumnStats {
  FeatureKind kind = FeatureKind::kQuantitative;
  // Quantitative: class mean and population standard deviation.
  double mean = 0.0;
  double stddev = 0.0;
  // Qualitative: the training dictionary, class proportions and the
  // standardized coordinate assigned to each category.
  std::vector<std::string> categories;
  std::vector<double> proportions;
  std::vector<double> scores;
  // No variation within the class; the coordinate is always 0.
  bool constant = false;
};

struct FactorModel {
  int class_id = 0;
  std::vector<Column> columns;
  std::vector<ColumnStats> stats;
  // Standardized coordinates of the reference center.
  Eigen::VectorXd center;
  // K x K; column i is factor i. Orthonormal, ordered by eigenvalue.
  Eigen::MatrixXd loadings;
  // Non-increasing, non-negative.
  Eigen::VectorXd eigenvalues;

  std::size_t num_factors() const {
    return static_cast<std::size_t>(loadings.cols());
  }
};

struct FactorScores {
  int class_id = 0;
  // N_c x K; column i holds factor i's score for each row.
  Eigen::MatrixXd values;
};

struct FamdFit {
  FactorModel model;
  FactorScores scores;
  RelationMatrix relation;
};

// Fits one class. `population`, when given, is the pooled training set whose
// mean becomes the reference center; otherwise the class mean is used and the
// scores are centered. Throws Error(kFamd, kInsufficientData) for fewer than
// two rows and Error(kFamd, kDegenerateInput) when every column is constant.
FamdFit FitFamd(const Dataset& part, int class_id,
                const Dataset* population = nullptr);

// Maps a dataset's category codes onto a model's coordinates once, so rows can
// be projected repeatedly without string lookups.
class BoundProjector {
 public:
  // Throws Error(kFamd, kSchemaMismatch) if the features differ.
  BoundProjector(const FactorModel& model, const Dataset& data);

  // Writes the row's standardized coordinates. Returns true if some category
  // was never seen in training; such cells get coordinate 0 (no indicator
  // weight).
  bool Standardize(std::size_t row, std::span<double> out) const;

  // Scores of the selected factors for one row. Returns the unseen flag.
  bool Project(std::size_t row, std::span<const int> factors,
               std::span<double> out) const;

 private:
  const FactorModel* model_;
  const Dataset* data_;
  // Per qualitative column: dataset code -> coordinate, NaN when unseen.
  std::vector<std::vector<double>> code_scores_;
};

struct Projection {
  Eigen::VectorXd scores;
  bool unseen_category = false;
};

Projection Project(const FactorModel& model, const Dataset& data,
                   std::size_t row);

// All rows, all factors: N x K.
Eigen::MatrixXd ProjectAll(const FactorModel& model, const Dataset& data);

}  // namespace trust

#endif  // TRUST_FAMD_H_
