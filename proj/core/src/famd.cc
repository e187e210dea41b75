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

#include "trust/famd.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kFamd, code, message);
}

bool IsConstantSpread(double stddev, double mean) {
  return !(stddev > 1e-12 * std::max(1.0, std::abs(mean)));
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments ComputeMoments(std::span<const double> values) {
  Moments m;
  if (values.empty()) return m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  for (double v : values) m.var += (v - m.mean) * (v - m.mean);
  m.var /= static_cast<double>(values.size());
  return m;
}

int CountCategories(std::span<const std::int32_t> codes) {
  std::int32_t max_code = -1;
  for (std::int32_t c : codes) max_code = std::max(max_code, c);
  return max_code + 1;
}

double PearsonSquared(std::span<const double> a, std::span<const double> b) {
  const Moments ma = ComputeMoments(a);
  const Moments mb = ComputeMoments(b);
  if (IsConstantSpread(std::sqrt(ma.var), ma.mean) ||
      IsConstantSpread(std::sqrt(mb.var), mb.mean)) {
    return 0.0;
  }
  double cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma.mean) * (b[i] - mb.mean);
  }
  cov /= static_cast<double>(a.size());
  return std::min(1.0, cov * cov / (ma.var * mb.var));
}

double CorrelationRatioSquared(std::span<const double> values,
                               std::span<const std::int32_t> codes) {
  const Moments m = ComputeMoments(values);
  if (IsConstantSpread(std::sqrt(m.var), m.mean)) return 0.0;
  const int categories = CountCategories(codes);
  std::vector<double> sums(categories, 0.0);
  std::vector<double> counts(categories, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    sums[codes[i]] += values[i];
    counts[codes[i]] += 1.0;
  }
  int present = 0;
  double between = 0.0;
  for (int k = 0; k < categories; ++k) {
    if (counts[k] == 0.0) continue;
    ++present;
    const double group_mean = sums[k] / counts[k];
    between += counts[k] * (group_mean - m.mean) * (group_mean - m.mean);
  }
  if (present < 2) return 0.0;
  const double total = m.var * static_cast<double>(values.size());
  return std::clamp(between / total, 0.0, 1.0);
}

double CramerVSquared(std::span<const std::int32_t> a,
                      std::span<const std::int32_t> b) {
  const int ra = CountCategories(a);
  const int rb = CountCategories(b);
  std::vector<double> table(static_cast<std::size_t>(ra) * rb, 0.0);
  std::vector<double> row(ra, 0.0);
  std::vector<double> col(rb, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[static_cast<std::size_t>(a[i]) * rb + b[i]] += 1.0;
    row[a[i]] += 1.0;
    col[b[i]] += 1.0;
  }
  const int present_a = static_cast<int>(std::count_if(row.begin(), row.end(), [](double x) { return x > 0; }));
  const int present_b = static_cast<int>(std::count_if(col.begin(), col.end(), [](double x) { return x > 0; }));
  const int dof = std::min(present_a, present_b) - 1;
  if (dof < 1) return 0.0;
  const double n = static_cast<double>(a.size());
  double chi2 = 0.0;
  for (int i = 0; i < ra; ++i) {
    if (row[i] == 0.0) continue;
    for (int j = 0; j < rb; ++j) {
      if (col[j] == 0.0) continue;
      const double expected = row[i] * col[j] / n;
      const double diff = table[static_cast<std::size_t>(i) * rb + j] - expected;
      chi2 += diff * diff / expected;
    }
  }
  return std::clamp(chi2 / (n * dof), 0.0, 1.0);
}

// Qualitative column prepared for quantification: only categories that occur
// in the class take part.
struct QualBlock {
  std::vector<int> present;         // dictionary codes with p > 0
  std::vector<int> slot;            // dictionary code -> index in present, -1
  Eigen::VectorXd sqrt_p;           // over present
};

QualBlock MakeBlock(const std::vector<double>& proportions) {
  QualBlock block;
  block.slot.assign(proportions.size(), -1);
  for (std::size_t k = 0; k < proportions.size(); ++k) {
    if (proportions[k] > 0.0) {
      block.slot[k] = static_cast<int>(block.present.size());
      block.present.push_back(static_cast<int>(k));
    }
  }
  block.sqrt_p.resize(static_cast<Eigen::Index>(block.present.size()));
  for (std::size_t j = 0; j < block.present.size(); ++j) {
    block.sqrt_p(static_cast<Eigen::Index>(j)) = std::sqrt(proportions[block.present[j]]);
  }
  return block;
}

void FlipToLargestPositive(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  }
  if (v.size() > 0 && v(best) < 0.0) v = -v;
}

}  // namespace

AssociationKind AssociationKindOf(FeatureKind a, FeatureKind b) {
  if (a == FeatureKind::kQuantitative && b == FeatureKind::kQuantitative) {
    return AssociationKind::kPearsonSquared;
  }
  if (a == FeatureKind::kQualitative && b == FeatureKind::kQualitative) {
    return AssociationKind::kCramerVSquared;
  }
  return AssociationKind::kCorrelationRatioSquared;
}

ColumnView ColumnView::Of(const Dataset& data, std::size_t col) {
  ColumnView view;
  view.kind = data.kind(col);
  if (view.kind == FeatureKind::kQuantitative) {
    view.values = data.quantitative(col);
  } else {
    view.codes = data.codes(col);
  }
  return view;
}

double Association(const ColumnView& a, const ColumnView& b) {
  if (a.size() != b.size() || a.size() < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "association needs two columns of equal length >= 2");
  }
  switch (AssociationKindOf(a.kind, b.kind)) {
    case AssociationKind::kPearsonSquared:
      return PearsonSquared(a.values, b.values);
    case AssociationKind::kCramerVSquared:
      return CramerVSquared(a.codes, b.codes);
    case AssociationKind::kCorrelationRatioSquared:
      return a.kind == FeatureKind::kQuantitative
                 ? CorrelationRatioSquared(a.values, b.codes)
                 : CorrelationRatioSquared(b.values, a.codes);
  }
  return 0.0;
}

FamdFit FitFamd(const Dataset& part, int class_id, const Dataset* population) {
  const std::size_t n = part.num_rows();
  const std::size_t k = part.num_features();
  if (n < 2) {
    Fail(ErrorCode::kInsufficientData,
         "class " + std::to_string(class_id) + " has " + std::to_string(n) +
             " rows; factor analysis needs at least 2");
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  FamdFit fit;
  FactorModel& model = fit.model;
  model.class_id = class_id;
  model.columns = part.schema().features;
  model.stats.resize(k);

  // Standardized coordinates, one column per feature.
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(k));
  std::vector<QualBlock> blocks(k);
  std::size_t informative = 0;

  for (std::size_t col = 0; col < k; ++col) {
    ColumnStats& stats = model.stats[col];
    stats.kind = part.kind(col);
    if (stats.kind == FeatureKind::kQuantitative) {
      const Moments m = ComputeMoments(part.quantitative(col));
      stats.mean = m.mean;
      stats.stddev = std::sqrt(m.var);
      stats.constant = IsConstantSpread(stats.stddev, stats.mean);
      if (stats.constant) {
        stats.stddev = 0.0;
        continue;
      }
      const std::span<const double> values = part.quantitative(col);
      for (std::size_t r = 0; r < n; ++r) {
        z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
            (values[r] - stats.mean) / stats.stddev;
      }
    } else {
      stats.categories = part.categories(col);
      stats.proportions.assign(stats.categories.size(), 0.0);
      for (std::int32_t code : part.codes(col)) stats.proportions[code] += inv_n;
      stats.scores.assign(stats.categories.size(), 0.0);
      blocks[col] = MakeBlock(stats.proportions);
      stats.constant = blocks[col].present.size() < 2;
    }
    if (!stats.constant) ++informative;
  }
  if (informative == 0) {
    Fail(ErrorCode::kDegenerateInput,
         "every column of class " + std::to_string(class_id) + " is constant");
  }

  // Quantify qualitative columns from their association with every other
  // non-constant column.
  for (std::size_t col = 0; col < k; ++col) {
    ColumnStats& stats = model.stats[col];
    if (stats.kind != FeatureKind::kQualitative || stats.constant) continue;
    const QualBlock& block = blocks[col];
    const auto m = static_cast<Eigen::Index>(block.present.size());
    const std::span<const std::int32_t> codes = part.codes(col);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);

    for (std::size_t other = 0; other < k; ++other) {
      if (other == col || model.stats[other].constant) continue;
      if (model.stats[other].kind == FeatureKind::kQuantitative) {
        // c[j] = sqrt(p_j) * (mean of z_other over category j).
        Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
        for (std::size_t r = 0; r < n; ++r) {
          c(block.slot[codes[r]]) +=
              z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(other));
        }
        for (Eigen::Index j = 0; j < m; ++j) c(j) *= inv_n / block.sqrt_p(j);
        gram.noalias() += c * c.transpose();
      } else {
        const QualBlock& other_block = blocks[other];
        const auto mo = static_cast<Eigen::Index>(other_block.present.size());
        const std::span<const std::int32_t> other_codes = part.codes(other);
        Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(m, mo);
        for (std::size_t r = 0; r < n; ++r) {
          joint(block.slot[codes[r]], other_block.slot[other_codes[r]]) += inv_n;
        }
        // (p_jh - p_j p_h) / sqrt(p_j p_h)
        Eigen::MatrixXd b = joint;
        for (Eigen::Index j = 0; j < m; ++j) {
          for (Eigen::Index h = 0; h < mo; ++h) {
            const double pj = block.sqrt_p(j) * block.sqrt_p(j);
            const double ph = other_block.sqrt_p(h) * other_block.sqrt_p(h);
            b(j, h) = (joint(j, h) - pj * ph) / (block.sqrt_p(j) * other_block.sqrt_p(h));
          }
        }
        gram.noalias() += b * b.transpose();
      }
    }

    Eigen::VectorXd u;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() == Eigen::Success && solver.eigenvalues()(m - 1) > 1e-12) {
      u = solver.eigenvectors().col(m - 1);
      u -= u.dot(block.sqrt_p) * block.sqrt_p;
    }
    if (u.size() == 0 || u.norm() < 1e-8) {
      // No association with anything: contrast the most frequent category
      // against the rest.
      Eigen::Index top = 0;
      for (Eigen::Index j = 1; j < m; ++j) {
        if (block.sqrt_p(j) > block.sqrt_p(top)) top = j;
      }
      u = -block.sqrt_p(top) * block.sqrt_p;
      u(top) += 1.0;
    }
    u.normalize();
    Eigen::VectorXd scores(m);
    for (Eigen::Index j = 0; j < m; ++j) scores(j) = u(j) / block.sqrt_p(j);
    FlipToLargestPositive(scores);
    for (Eigen::Index j = 0; j < m; ++j) stats.scores[block.present[j]] = scores(j);
    for (std::size_t r = 0; r < n; ++r) {
      z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
          stats.scores[codes[r]];
    }
  }

  // Relation matrix and its factorization.
  RelationMatrix& relation = fit.relation;
  relation.values = (z.transpose() * z) * inv_n;
  relation.values = 0.5 * (relation.values + relation.values.transpose()).eval();
  relation.kinds.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      relation.kinds[i * k + j] =
          AssociationKindOf(model.stats[i].kind, model.stats[j].kind);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(relation.values, Eigen::ComputeFullU);
  model.loadings = svd.matrixU();
  model.eigenvalues = svd.singularValues();
  for (Eigen::Index i = 0; i < model.loadings.cols(); ++i) {
    FlipToLargestPositive(model.loadings.col(i));
  }

  // Reference center in this class's standardized coordinates.
  model.center = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  if (population != nullptr && population->num_rows() > 0) {
    if (!population->schema().SameFeatures(part.schema())) {
      Fail(ErrorCode::kSchemaMismatch, "population schema differs from class schema");
    }
    const double inv_pop = 1.0 / static_cast<double>(population->num_rows());
    for (std::size_t col = 0; col < k; ++col) {
      const ColumnStats& stats = model.stats[col];
      if (stats.constant) continue;
      double value = 0.0;
      if (stats.kind == FeatureKind::kQuantitative) {
        const Moments pm = ComputeMoments(population->quantitative(col));
        value = (pm.mean - stats.mean) / stats.stddev;
      } else {
        std::unordered_map<std::string, double> score_of;
        for (std::size_t c = 0; c < stats.categories.size(); ++c) {
          score_of.emplace(stats.categories[c], stats.scores[c]);
        }
        const std::vector<std::string>& dict = population->categories(col);
        std::vector<double> counts(dict.size(), 0.0);
        for (std::int32_t code : population->codes(col)) counts[code] += 1.0;
        for (std::size_t c = 0; c < dict.size(); ++c) {
          const auto it = score_of.find(dict[c]);
          if (it != score_of.end()) value += counts[c] * inv_pop * it->second;
        }
      }
      model.center(static_cast<Eigen::Index>(col)) = value;
    }
  }

  fit.scores.class_id = class_id;
  fit.scores.values = (z.rowwise() - model.center.transpose()) * model.loadings;
  return fit;
}

BoundProjector::BoundProjector(const FactorModel& model, const Dataset& data)
    : model_(&model), data_(&data) {
  if (data.schema().features != model.columns) {
    Fail(ErrorCode::kSchemaMismatch,
         "dataset features do not match the factor model's schema");
  }
  code_scores_.resize(model.columns.size());
  for (std::size_t col = 0; col < model.columns.size(); ++col) {
    const ColumnStats& stats = model.stats[col];
    if (stats.kind != FeatureKind::kQualitative) continue;
    std::unordered_map<std::string_view, double> score_of;
    for (std::size_t c = 0; c < stats.categories.size(); ++c) {
      score_of.emplace(stats.categories[c], stats.scores[c]);
    }
    const std::vector<std::string>& dict = data.categories(col);
    std::vector<double>& table = code_scores_[col];
    table.assign(dict.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 0; c < dict.size(); ++c) {
      const auto it = score_of.find(dict[c]);
      if (it != score_of.end()) table[c] = it->second;
    }
  }
}

bool BoundProjector::Standardize(std::size_t row, std::span<double> out) const {
  bool unseen = false;
  for (std::size_t col = 0; col < model_->columns.size(); ++col) {
    const ColumnStats& stats = model_->stats[col];
    double value = 0.0;
    if (stats.kind == FeatureKind::kQuantitative) {
      if (!stats.constant) {
        value = (data_->value(row, col) - stats.mean) / stats.stddev;
      }
    } else {
      const double score = code_scores_[col][data_->codes(col)[row]];
      if (std::isnan(score)) {
        unseen = true;
      } else if (!stats.constant) {
        value = score;
      }
    }
    out[col] = value;
  }
  return unseen;
}

bool BoundProjector::Project(std::size_t row, std::span<const int> factors,
                             std::span<double> out) const {
  const std::size_t k = model_->columns.size();
  double buffer[256];
  std::vector<double> heap;
  double* z = buffer;
  if (k > std::size(buffer)) {
    heap.resize(k);
    z = heap.data();
  }
  const bool unseen = Standardize(row, std::span<double>(z, k));
  for (std::size_t col = 0; col < k; ++col) {
    z[col] -= model_->center(static_cast<Eigen::Index>(col));
  }
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto loading = model_->loadings.col(factors[f]);
    double score = 0.0;
    for (std::size_t col = 0; col < k; ++col) {
      score += z[col] * loading(static_cast<Eigen::Index>(col));
    }
    out[f] = score;
  }
  return unseen;
}

Projection Project(const FactorModel& model, const Dataset& data, std::size_t row) {
  if (row >= data.num_rows()) {
    Fail(ErrorCode::kOutOfRange, "row " + std::to_string(row) + " out of range");
  }
  const BoundProjector projector(model, data);
  std::vector<int> all(model.num_factors());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  Projection out;
  out.scores.resize(static_cast<Eigen::Index>(all.size()));
  out.unseen_category = projector.Project(
      row, all, std::span<double>(out.scores.data(), all.size()));
  return out;
}

Eigen::MatrixXd ProjectAll(const FactorModel& model, const Dataset& data) {
  const BoundProjector projector(model, data);
  const std::size_t k = model.columns.size();
  Eigen::MatrixXd z(static_cast<Eigen::Index>(data.num_rows()),
                    static_cast<Eigen::Index>(k));
  std::vector<double> row_buffer(k);
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    projector.Standardize(r, row_buffer);
    for (std::size_t col = 0; col < k; ++col) {
      z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = row_buffer[col];
    }
  }
  return (z.rowwise() - model.center.transpose()) * model.loadings;
}

}  // namespace trust
