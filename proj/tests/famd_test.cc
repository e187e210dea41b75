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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_util.h"
#include "trust/famd.h"

namespace trust {
namespace {

using testing::CodeOf;
using testing::FromMatrix;
using testing::RandomMatrix;

ColumnView Quant(const std::vector<double>& v) {
  ColumnView c;
  c.kind = FeatureKind::kQuantitative;
  c.values = v;
  return c;
}

ColumnView Qual(const std::vector<std::int32_t>& v) {
  ColumnView c;
  c.kind = FeatureKind::kQualitative;
  c.codes = v;
  return c;
}

TEST(AssociationTest, QuantitativePairs) {
  const std::vector<double> x = {1, 2, 3, 4}, y = {2, 4, 6, 8}, z = {4, 1, 3, 2};
  EXPECT_NEAR(Association(Quant(x), Quant(x)), 1.0, 1e-15);
  EXPECT_NEAR(Association(Quant(x), Quant(y)), 1.0, 1e-15);
  EXPECT_NEAR(Association(Quant(x), Quant(z)), Association(Quant(z), Quant(x)), 1e-15);
  const std::vector<double> constant = {5, 5, 5, 5};
  EXPECT_EQ(Association(Quant(x), Quant(constant)), 0.0);
}

TEST(AssociationTest, IndependentQualitativeMatchesContingencyOracle) {
  std::mt19937_64 rng(5);
  std::vector<std::int32_t> a(10000), b(10000);
  for (auto& v : a) v = static_cast<std::int32_t>(rng() % 4);
  for (auto& v : b) v = static_cast<std::int32_t>(rng() % 6);
  const double got = Association(Qual(a), Qual(b));
  EXPECT_LT(got, 0.01);
  const std::vector<int> ia(a.begin(), a.end()), ib(b.begin(), b.end());
  EXPECT_NEAR(got, oracle::BruteForceCramerV2(ia, ib), 1e-12);
  EXPECT_NEAR(Association(Qual(a), Qual(a)), 1.0, 1e-12);
}

TEST(AssociationTest, CorrelationRatioIsSymmetricAndBounded) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::int32_t> g(500);
  std::vector<double> x(500);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = static_cast<std::int32_t>(rng() % 3);
    x[i] = 2.0 * g[i] + normal(rng);
  }
  const double eta = Association(Qual(g), Quant(x));
  EXPECT_NEAR(eta, Association(Quant(x), Qual(g)), 1e-15);
  EXPECT_GT(eta, 0.5);
  EXPECT_LE(eta, 1.0);
  // Group means explain everything when x is a function of g.
  std::vector<double> exact(g.begin(), g.end());
  EXPECT_NEAR(Association(Qual(g), Quant(exact)), 1.0, 1e-12);
}

TEST(FamdTest, QuantitativeOnlyEqualsPcaOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Eigen::MatrixXd x = RandomMatrix(100, 5, seed);
    x.col(1) += 0.7 * x.col(0);
    x.col(3) -= 0.4 * x.col(2);
    const FamdFit fit = FitFamd(FromMatrix(x), 0);
    oracle::Matrix rows(100, std::vector<double>(5));
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 5; ++j) rows[i][j] = x(i, j);
    }
    const oracle::Pca pca = oracle::PcaOracle(rows);
    for (int f = 0; f < 5; ++f) {
      EXPECT_NEAR(fit.model.eigenvalues(f), pca.eigenvalues[f], 1e-9);
      const double sign = fit.scores.values(0, f) * pca.scores[0][f] >= 0 ? 1.0 : -1.0;
      for (int i = 0; i < 100; ++i) {
        ASSERT_NEAR(fit.scores.values(i, f), sign * pca.scores[i][f], 1e-6);
      }
    }
  }
}

TEST(FamdTest, RankOneStructure) {
  Eigen::MatrixXd x(50, 2);
  for (int i = 0; i < 50; ++i) {
    x(i, 0) = i * 0.37 - 3.0;
    x(i, 1) = 2.0 * x(i, 0) + 1.0;
  }
  const FamdFit fit = FitFamd(FromMatrix(x), 0);
  EXPECT_NEAR(fit.model.eigenvalues(0) / fit.model.eigenvalues.sum(), 1.0, 1e-12);
  EXPECT_NEAR(fit.model.eigenvalues(1), 0.0, 1e-9);
}

Dataset Mixed(std::size_t n, std::uint64_t seed) {
  Schema s;
  s.features = {{"a", FeatureKind::kQuantitative},
                {"b", FeatureKind::kQualitative},
                {"c", FeatureKind::kQuantitative},
                {"d", FeatureKind::kQualitative}};
  Dataset d(s);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const char* cats[] = {"x", "y", "z"};
  for (std::size_t i = 0; i < n; ++i) {
    const int g = static_cast<int>(rng() % 3);
    const double a = g + normal(rng);
    d.AddRow({a, std::string(cats[g]), 0.5 * a + normal(rng),
              std::string(rng() % 2 ? "p" : "q")});
  }
  return d;
}

TEST(FamdTest, MixedModelInvariants) {
  const Dataset d = Mixed(400, 3);
  const FamdFit fit = FitFamd(d, 1, &d);
  const Eigen::MatrixXd& l = fit.model.loadings;
  const Eigen::MatrixXd gram = l.transpose() * l;
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(fit.model.eigenvalues.sum(), fit.relation.values.trace(), 1e-6);
  for (int i = 0; i + 1 < 4; ++i) EXPECT_GE(fit.model.eigenvalues(i), fit.model.eigenvalues(i + 1));
  EXPECT_GE(fit.model.eigenvalues.minCoeff(), 0.0);
  for (int f = 0; f < 4; ++f) {
    Eigen::Index arg;
    l.col(f).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(l(arg, f), 0.0);
  }
  const Eigen::MatrixXd strengths = fit.relation.Strengths();
  EXPECT_TRUE(strengths.isApprox(strengths.transpose()));
  EXPECT_GE(strengths.minCoeff(), 0.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(strengths(i, i), 1.0, 1e-12);
  EXPECT_EQ(fit.relation.kind(0, 1), AssociationKind::kCorrelationRatioSquared);
  EXPECT_EQ(fit.relation.kind(1, 3), AssociationKind::kCramerVSquared);
  EXPECT_EQ(fit.relation.kind(0, 2), AssociationKind::kPearsonSquared);
}

TEST(FamdTest, ProjectingTrainingRowsReproducesScores) {
  const Dataset d = Mixed(200, 4);
  const FamdFit fit = FitFamd(d, 0, &d);
  for (std::size_t r = 0; r < d.num_rows(); r += 17) {
    const Projection p = Project(fit.model, d, r);
    EXPECT_FALSE(p.unseen_category);
    for (int f = 0; f < 4; ++f) {
      EXPECT_NEAR(p.scores(f), fit.scores.values(static_cast<Eigen::Index>(r), f), 1e-9);
    }
  }
  const Eigen::MatrixXd all = ProjectAll(fit.model, d);
  EXPECT_LT((all - fit.scores.values).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FamdTest, ClassMeanProjectsToOrigin) {
  const Eigen::MatrixXd x = RandomMatrix(60, 3, 9);
  const FamdFit fit = FitFamd(FromMatrix(x), 0);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Projection p = Project(fit.model, FromMatrix(mean), 0);
  EXPECT_LT(p.scores.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FamdTest, ProjectionIsAffineOnQuantitativeData) {
  const Eigen::MatrixXd x = RandomMatrix(80, 4, 10);
  const FamdFit fit = FitFamd(FromMatrix(x), 0);
  const Eigen::MatrixXd pts = RandomMatrix(2, 4, 11) * 3.0;
  for (double a : {0.0, 0.25, 0.7, 1.0, 1.8}) {
    Eigen::MatrixXd mix(1, 4);
    mix.row(0) = a * pts.row(0) + (1 - a) * pts.row(1);
    const Eigen::VectorXd lhs = Project(fit.model, FromMatrix(mix), 0).scores;
    const Eigen::VectorXd rhs = a * Project(fit.model, FromMatrix(pts.topRows(1)), 0).scores +
                                (1 - a) * Project(fit.model, FromMatrix(pts.bottomRows(1)), 0).scores;
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(FamdTest, UnseenCategoryIsFlagged) {
  const Dataset train = Mixed(100, 12);
  const FamdFit fit = FitFamd(train, 0);
  Dataset fresh(train.schema());
  fresh.AddRow({0.0, std::string("never"), 0.0, std::string("p")});
  fresh.AddRow({0.0, std::string("x"), 0.0, std::string("p")});
  EXPECT_TRUE(Project(fit.model, fresh, 0).unseen_category);
  EXPECT_FALSE(Project(fit.model, fresh, 1).unseen_category);
  EXPECT_TRUE(Project(fit.model, fresh, 0).scores.allFinite());
}

TEST(FamdTest, DegenerateAndTinyInputs) {
  Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(10, 3, 2.0);
  EXPECT_EQ(CodeOf([&] { FitFamd(FromMatrix(constant), 0); }), ErrorCode::kDegenerateInput);
  EXPECT_EQ(CodeOf([&] { FitFamd(FromMatrix(RandomMatrix(1, 3, 1)), 0); }),
            ErrorCode::kInsufficientData);
  // One constant column among varying ones is fine.
  Eigen::MatrixXd partly = RandomMatrix(30, 3, 2);
  partly.col(1).setConstant(4.0);
  const FamdFit fit = FitFamd(FromMatrix(partly), 0);
  EXPECT_TRUE(fit.scores.values.allFinite());
}

TEST(FamdTest, FortyColumnMixedTableGivesFortyFactors) {
  Schema s;
  for (int j = 0; j < 40; ++j) {
    s.features.push_back({"c" + std::to_string(j),
                          j % 5 == 1 ? FeatureKind::kQualitative : FeatureKind::kQuantitative});
  }
  Dataset d(s);
  std::mt19937_64 rng(40);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 0; r < 300; ++r) {
    std::vector<Cell> row;
    for (int j = 0; j < 40; ++j) {
      if (j % 5 == 1) {
        row.emplace_back(std::string(1, static_cast<char>('a' + rng() % 4)));
      } else {
        row.emplace_back(normal(rng));
      }
    }
    d.AddRow(row);
  }
  const FamdFit fit = FitFamd(d, 0, &d);
  EXPECT_EQ(fit.model.num_factors(), 40u);
  EXPECT_EQ(fit.scores.values.cols(), 40);
}

TEST(FamdTest, BatchProjectionShape) {
  const Eigen::MatrixXd x = RandomMatrix(200, 6, 13);
  const FamdFit fit = FitFamd(FromMatrix(x), 0);
  const Eigen::MatrixXd big = RandomMatrix(25195, 6, 14);
  const Eigen::MatrixXd scores = ProjectAll(fit.model, FromMatrix(big));
  EXPECT_EQ(scores.rows(), 25195);
  EXPECT_EQ(scores.cols(), 6);
}

TEST(FamdTest, SchemaMismatchIsRejected) {
  const FamdFit fit = FitFamd(FromMatrix(RandomMatrix(20, 3, 15)), 0);
  EXPECT_EQ(CodeOf([&] { Project(fit.model, FromMatrix(RandomMatrix(2, 4, 1)), 0); }),
            ErrorCode::kSchemaMismatch);
}

}  // namespace
}  // namespace trust
