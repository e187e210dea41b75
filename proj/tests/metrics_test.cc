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

#include <random>

#include <gtest/gtest.h>

#include "json.hpp"
#include "oracles.h"
#include "test_util.h"
#include "trust/metrics.h"

namespace trust {
namespace {

using testing::CodeOf;

struct PublishedRow {
  const char* name;
  std::uint64_t tn, fp, fn, tp;
  double accuracy, mcc, ur;
};

// Confusion matrices of the primary model on the three IDS datasets and the
// summary row printed for each.
constexpr PublishedRow kRows[] = {
    {"iiot_train", 885980, 12, 131, 69448, 0.9998, 0.9988, 0.0019},
    {"iiot_test", 221452, 4, 40, 17397, 0.9998, 0.9986, 0.0023},
    {"nslkdd_train", 53664, 173, 529, 46412, 0.9930, 0.9860, 0.0113},
    {"nslkdd_test", 13452, 54, 138, 11551, 0.9924, 0.9847, 0.0118},
    {"unsw_train", 15791, 657, 473, 35507, 0.9784, 0.9498, 0.0130},
    {"unsw_test", 3895, 177, 115, 8920, 0.9777, 0.9478, 0.0127},
};

TEST(MetricsTest, PublishedSummaryRows) {
  for (const PublishedRow& row : kRows) {
    SCOPED_TRACE(row.name);
    const ConfusionMatrix cm = ConfusionMatrix::FromBinary(row.tn, row.fp, row.fn, row.tp);
    EXPECT_NEAR(Accuracy(cm), row.accuracy, 1e-4);
    EXPECT_NEAR(Mcc(cm), row.mcc, 1e-4);
    if (std::string(row.name) == "unsw_train") {
      // Printed with one decimal of a percent ("1.3%"); the exact ratio is
      // 473 / 35980 = 0.013146, so only the printed precision can match.
      EXPECT_NEAR(UndetectedRate(cm), row.ur, 5e-4);
    } else {
      EXPECT_NEAR(UndetectedRate(cm), row.ur, 1e-4);
    }
  }
}

TEST(MetricsTest, TrivialMatrices) {
  EXPECT_DOUBLE_EQ(Mcc(ConfusionMatrix::FromBinary(10, 0, 0, 7)), 1.0);
  EXPECT_DOUBLE_EQ(Mcc(ConfusionMatrix::FromBinary(0, 3, 4, 0)), -1.0);
  EXPECT_DOUBLE_EQ(Accuracy(ConfusionMatrix::FromBinary(10, 0, 0, 7)), 1.0);
  EXPECT_DOUBLE_EQ(Accuracy(ConfusionMatrix::FromBinary(5, 5, 5, 5)), 0.5);
  EXPECT_DOUBLE_EQ(UndetectedRate(ConfusionMatrix::FromBinary(3, 1, 0, 9)), 0.0);
  EXPECT_DOUBLE_EQ(UndetectedRate(ConfusionMatrix::FromBinary(3, 1, 6, 0)), 1.0);
  // A zero denominator factor gives 0.
  EXPECT_EQ(Mcc(ConfusionMatrix::FromBinary(10, 0, 5, 0)), 0.0);
}

TEST(MetricsTest, Preconditions) {
  EXPECT_EQ(CodeOf([] { Mcc(ConfusionMatrix(2)); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([] { Accuracy(ConfusionMatrix(2)); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([] { UndetectedRate(ConfusionMatrix::FromBinary(4, 1, 0, 0)); }),
            ErrorCode::kEmptyInput);
  ConfusionMatrix cm(3);
  EXPECT_EQ(CodeOf([&] { cm.Add(3, 0); }), ErrorCode::kOutOfRange);
}

TEST(MetricsTest, SymmetricUnderClassSwap) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t tn = rng() % 1000, fp = rng() % 100, fn = rng() % 100, tp = 1 + rng() % 1000;
    EXPECT_NEAR(Mcc(ConfusionMatrix::FromBinary(tn, fp, fn, tp)),
                Mcc(ConfusionMatrix::FromBinary(tp, fn, fp, tn)), 1e-12);
  }
}

TEST(MetricsTest, MulticlassMatchesCovarianceOracle) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const int classes = 2 + static_cast<int>(rng() % 4);
    std::vector<int> truth(300), pred(300);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      truth[i] = static_cast<int>(rng() % classes);
      pred[i] = rng() % 3 == 0 ? static_cast<int>(rng() % classes) : truth[i];
    }
    const ConfusionMatrix cm = ConfusionMatrix::FromLabels(truth, pred, classes);
    EXPECT_NEAR(Mcc(cm), oracle::OracleMcc(truth, pred, classes), 1e-12);
    EXPECT_NEAR(Accuracy(cm), static_cast<double>(cm.trace()) / static_cast<double>(cm.total()), 0.0);
  }
}

TEST(MetricsTest, BinaryAccessorsAndReports) {
  const ConfusionMatrix cm = ConfusionMatrix::FromBinary(50, 2, 3, 45);
  EXPECT_EQ(cm.tn(), 50u);
  EXPECT_EQ(cm.fp(), 2u);
  EXPECT_EQ(cm.fn(), 3u);
  EXPECT_EQ(cm.tp(), 45u);
  EXPECT_EQ(cm.tp(0), 50u);
  EXPECT_EQ(cm.fn(0), 2u);
  const auto doc = nlohmann::json::parse(MetricsToJson(cm, 1, {"normal", "attack"}));
  EXPECT_EQ(doc["confusion_matrix"][1][0], 3);
  EXPECT_NEAR(doc["undetected_rate"].get<double>(), 3.0 / 48.0, 1e-15);
  const std::string text = MetricsToText(cm, 1, {"normal", "attack"});
  EXPECT_NE(text.find("MCC"), std::string::npos);
  EXPECT_NE(text.find("attack"), std::string::npos);
}

}  // namespace
}  // namespace trust
