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
#include <set>

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_util.h"
#include "trust/modesearch.h"

namespace trust {
namespace {

using testing::CodeOf;
using testing::Draws;
using testing::TwoModeDraws;

TEST(ScoreTest, SeparatedClassesScoreNearOne) {
  const std::vector<std::vector<double>> v = {Draws(2000, 0.0, 1.0, 51), Draws(2000, 10.0, 1.0, 52)};
  EXPECT_GT(ScoreAssignment(v, std::vector<int>{1, 1}, 1), 0.99);
}

TEST(ScoreTest, IdenticalClassesScoreNearZero) {
  const std::vector<std::vector<double>> v = {Draws(5000, 0.0, 1.0, 53), Draws(5000, 0.0, 1.0, 54)};
  for (std::vector<int> m : {std::vector<int>{1, 1}, std::vector<int>{2, 3}}) {
    EXPECT_LT(std::abs(ScoreAssignment(v, m, 1)), 0.05);
  }
}

TEST(ScoreTest, PerfectLabelingAndInsufficientData) {
  const std::vector<std::vector<double>> v = {{0.0, 0.1, 0.2, 0.15}, {50.0, 50.1, 50.3, 50.2}};
  EXPECT_DOUBLE_EQ(ScoreAssignment(v, std::vector<int>{1, 1}, 1), 1.0);
  bool lacking = false;
  EXPECT_EQ(ScoreAssignment(v, std::vector<int>{3, 1}, 1, &lacking), -1.0);
  EXPECT_TRUE(lacking);
}

TEST(ScoreTest, CachedScoresAreStable) {
  CandidateScorer scorer({TwoModeDraws(400, 0, 6, 55), Draws(400, 3.0, 1.0, 56)}, 7);
  const std::vector<int> m = {2, 1};
  const double first = scorer.Score(m);
  scorer.Score(std::vector<int>{1, 1});
  EXPECT_EQ(scorer.Score(m), first);
  EXPECT_EQ(scorer.evaluations(), 2u);
  EXPECT_EQ(first, ScoreAssignment(std::vector<std::vector<double>>{TwoModeDraws(400, 0, 6, 55),
                                                                    Draws(400, 3.0, 1.0, 56)},
                                   m, 7));
}

std::vector<std::vector<double>> BimodalVersusCenter(std::uint64_t seed) {
  return {TwoModeDraws(1000, 0.0, 10.0, seed), Draws(1000, 5.0, 1.0, seed + 1)};
}

TEST(GridTest, ExhaustiveOracleOverSmallZone) {
  const auto v = BimodalVersusCenter(57);
  SearchZone zone = SearchZone::Uniform(2, 1, 4);
  const ModeAssignment got = GridModeSelect(v, zone, 3);
  EXPECT_GE(got.modes[0], 2);
  EXPECT_EQ(got.evaluations, 16u);
  double best = -2.0;
  std::vector<int> arg;
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      const std::vector<int> m = {a, b};
      const double s = ScoreAssignment(v, m, 3);
      if (BetterCandidate(s, m, best, arg) || arg.empty()) {
        best = s;
        arg = m;
      }
      EXPECT_LE(s, got.score);
    }
  }
  EXPECT_EQ(arg, got.modes);
  EXPECT_EQ(best, got.score);
}

TEST(GridTest, SingletonZone) {
  const auto v = BimodalVersusCenter(58);
  const ModeAssignment got = GridModeSelect(v, SearchZone::Uniform(2, 1, 1), 3);
  EXPECT_EQ(got.modes, (std::vector<int>{1, 1}));
  EXPECT_EQ(got.score, ScoreAssignment(v, std::vector<int>{1, 1}, 3));
  EXPECT_EQ(got.evaluations, 1u);
}

TEST(GridTest, TiesFavorFewerModes) {
  // Disjoint supports: every candidate labels perfectly.
  const std::vector<std::vector<double>> v = {Draws(300, 0.0, 0.1, 59), Draws(300, 100.0, 0.1, 60)};
  const ModeAssignment got = GridModeSelect(v, SearchZone::Uniform(2, 1, 3), 3);
  EXPECT_EQ(got.score, 1.0);
  EXPECT_EQ(got.modes, (std::vector<int>{1, 1}));
  EXPECT_TRUE(BetterCandidate(0.5, std::vector<int>{1, 2}, 0.5, std::vector<int>{2, 1}));
  EXPECT_FALSE(BetterCandidate(0.5, std::vector<int>{2, 2}, 0.5, std::vector<int>{1, 2}));
}

TEST(GridTest, ExhaustivenessAgainstRandomRescoring) {
  const auto v = BimodalVersusCenter(61);
  const SearchZone zone = SearchZone::Uniform(2, 1, 6, 3);
  const ModeAssignment got = GridModeSelect(v, zone, 5);
  std::mt19937_64 rng(62);
  for (int t = 0; t < 10; ++t) {
    const std::vector<int> m = {1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6)};
    EXPECT_GE(got.score, ScoreAssignment(v, m, 5));
  }
}

TEST(GridTest, ZoneValidation) {
  const auto v = BimodalVersusCenter(63);
  SearchZone bad = SearchZone::Uniform(2, 3, 2);
  EXPECT_EQ(CodeOf([&] { GridModeSelect(v, bad, 1); }), ErrorCode::kInvalidArgument);
  SearchZone empty;
  EXPECT_EQ(CodeOf([&] { GridModeSelect(v, empty, 1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { FastGridSelect(v, SearchZone::Uniform(3), 1); }), ErrorCode::kInvalidArgument);
  SearchZone zero = SearchZone::Uniform(2, 0, 3);
  EXPECT_EQ(CodeOf([&] { GridModeSelect(v, zero, 1); }), ErrorCode::kInvalidArgument);
}

TEST(FastTest, LargeZoneNearFullScoreWithFewEvaluations) {
  const auto v = BimodalVersusCenter(64);
  const SearchZone zone = SearchZone::Uniform(2, 1, 20, 5);
  CandidateScorer scorer(v, 3);
  const ModeAssignment fast = FastGridSelect(scorer, zone);
  // 16 centers plus the rest of the winning 5x5 sub-zone.
  EXPECT_EQ(fast.evaluations, 16u + 24u);
  const ModeAssignment full = GridModeSelect(scorer, zone);
  EXPECT_EQ(full.evaluations, 400u);
  EXPECT_GE(fast.score, 0.99 * full.score);
  EXPECT_LE(fast.score, full.score);
  EXPECT_GE(full.evaluations, 4 * fast.evaluations);
}

TEST(FastTest, SingleSubzoneEqualsGrid) {
  const auto v = BimodalVersusCenter(65);
  const SearchZone zone = SearchZone::Uniform(2, 1, 4, 5);
  const ModeAssignment fast = FastGridSelect(v, zone, 3);
  const ModeAssignment full = GridModeSelect(v, zone, 3);
  EXPECT_EQ(fast.modes, full.modes);
  EXPECT_EQ(fast.score, full.score);
}

TEST(FastTest, PartialSubzonesAndDeterminism) {
  const auto v = BimodalVersusCenter(66);
  const SearchZone zone = {{1, 2}, {7, 9}, 3};
  const ModeAssignment a = FastGridSelect(v, zone, 4);
  const ModeAssignment b = FastGridSelect(v, zone, 4);
  EXPECT_EQ(a.modes, b.modes);
  EXPECT_EQ(a.score, b.score);
  EXPECT_GE(a.modes[0], 1);
  EXPECT_LE(a.modes[0], 7);
  EXPECT_GE(a.modes[1], 2);
  EXPECT_LE(a.modes[1], 9);
  const ModeAssignment full = GridModeSelect(v, zone, 4);
  EXPECT_LE(a.score, full.score);
  EXPECT_LT(a.evaluations, full.evaluations);
}

TEST(FastTest, ThreeClasses) {
  const std::vector<std::vector<double>> v = {Draws(300, 0.0, 1.0, 67), Draws(300, 6.0, 1.0, 68),
                                              TwoModeDraws(300, -8.0, 14.0, 69)};
  const ModeAssignment fast = FastGridSelect(v, SearchZone::Uniform(3, 1, 4, 2), 1);
  EXPECT_EQ(fast.modes.size(), 3u);
  EXPECT_GT(fast.score, 0.9);
}

}  // namespace
}  // namespace trust
