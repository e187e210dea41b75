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

#include "test_util.h"
#include "trust/baseline.h"
#include "trust/bench.h"
#include "trust/timing.h"

namespace trust {
namespace {

using testing::CodeOf;

TEST(SurrogateTest, RecoversLinearModelSigns) {
  const std::vector<double> w = {1.5, -2.0, 0.7, -0.4, 3.0, -1.1, 0.9, -2.5, 1.2, -0.8};
  const LinearClassifier model(w, 0.0);
  const Dataset reference = testing::FromMatrix(testing::RandomMatrix(500, 10, 101));
  const LocalSurrogate surrogate(model, reference);
  // Samples near the decision boundary so perturbations cross it.
  const Dataset samples = testing::FromMatrix(testing::RandomMatrix(20, 10, 102) * 0.2);
  SurrogateOptions options;
  options.perturbations = 2000;
  options.target_class = 1;
  std::size_t matches = 0, total = 0;
  for (std::size_t r = 0; r < samples.num_rows(); ++r) {
    options.seed = r + 1;
    const SurrogateExplanation e = surrogate.Explain(samples, r, options);
    for (std::size_t j = 0; j < w.size(); ++j) {
      matches += (e.coefficients[j] > 0) == (w[j] > 0);
      ++total;
    }
    EXPECT_GE(e.seconds, 0.0);
  }
  EXPECT_GE(static_cast<double>(matches) / static_cast<double>(total), 0.9);
}

TEST(SurrogateTest, Preconditions) {
  const LinearClassifier model({1.0}, 0.0);
  const Dataset reference = testing::FromMatrix(testing::RandomMatrix(50, 1, 103));
  const LocalSurrogate surrogate(model, reference);
  SurrogateOptions options;
  options.perturbations = kMinPerturbations - 1;
  EXPECT_EQ(CodeOf([&] { surrogate.Explain(reference, 0, options); }), ErrorCode::kInvalidArgument);
  Schema mixed;
  mixed.features = {{"proto", FeatureKind::kQualitative}};
  Dataset qual(mixed);
  qual.AddRow({std::string("tcp")});
  EXPECT_EQ(CodeOf([&] { LocalSurrogate(model, qual); }), ErrorCode::kInvalidArgument);
}

TEST(TimingTest, LineFit) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {3, 5, 7, 9, 11};
  const LinearFit fit = FitLine(x, y);
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  const std::vector<double> noisy = {1, 4, 2, 5, 3};
  EXPECT_LT(FitLine(x, noisy).r_squared, 0.9);
  EXPECT_EQ(CodeOf([] { FitLine(std::vector<double>{1, 1}, std::vector<double>{1, 2}); }),
            ErrorCode::kDegenerateInput);
}

TEST(TimingTest, StopwatchAndRecords) {
  Stopwatch sw;
  EXPECT_GE(sw.Seconds(), 0.0);
  const std::vector<TimingRecord> records = {{"explain", 1000, 4, 0.01, 0, 1}};
  EXPECT_NE(TimingRecordsToJson(records).find("\"explain\""), std::string::npos);
  EXPECT_NE(TimingRecordsToText(records).find("explain"), std::string::npos);
  EXPECT_FALSE(MachineDescription().empty());
}

TEST(BenchTest, SmallRunShape) {
  BenchConfig config;
  config.sizes = {200, 400, 800};
  config.build_rows = 1000;
  config.baseline_samples = 10;
  config.perturbations = 100;
  config.repeats = 1;
  const BenchResult r = RunBench(config);
  std::vector<std::size_t> explained;
  for (const TimingRecord& t : r.records) {
    EXPECT_GE(t.seconds, 0.0);
    if (t.stage == "explain") explained.push_back(t.samples);
  }
  EXPECT_EQ(explained, config.sizes);
  // 20 x 20 zone in 5 x 5 sub-zones.
  EXPECT_EQ(r.full_evaluations, 400u);
  EXPECT_EQ(r.fast_evaluations, 40u);
  EXPECT_GE(static_cast<double>(r.full_evaluations) / r.fast_evaluations, 4.0);
  EXPECT_GE(r.full_score, r.fast_score);
  EXPECT_NE(r.ToJson().find("\"explain_fit\""), std::string::npos);
}

TEST(BenchTest, RejectsBadConfigs) {
  BenchConfig config;
  config.sizes = {100};
  EXPECT_EQ(testing::CodeOf([&] { RunBench(config); }), ErrorCode::kInvalidArgument);
  config.sizes = {200, 100};
  EXPECT_EQ(testing::CodeOf([&] { RunBench(config); }), ErrorCode::kInvalidArgument);
}

TEST(BenchTest, ScalingSuiteIsQuantitative) {
  const SynthSpec spec = ScalingSuiteSpec(10, 3);
  for (const auto& f : spec.features) EXPECT_EQ(f.kind, FeatureKind::kQuantitative);
  EXPECT_EQ(spec.MakeSchema().num_features(), 5u);
}

}  // namespace
}  // namespace trust
