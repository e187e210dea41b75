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

#include "trust/reps.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kReps, code, message);
}

int NumClasses(std::span<const int> labels) {
  int classes = 0;
  for (int y : labels) {
    if (y < 0) Fail(ErrorCode::kOutOfRange, "negative class label");
    classes = std::max(classes, y + 1);
  }
  return classes;
}

double PlogP(double count, double total) {
  if (count <= 0.0) return 0.0;
  const double p = count / total;
  return p * std::log2(p);
}

}  // namespace

BinnedVariable BinEqualWidth(std::span<const double> values, int bins) {
  if (bins < 2) Fail(ErrorCode::kInvalidArgument, "need at least 2 bins");
  if (values.empty()) Fail(ErrorCode::kInvalidArgument, "cannot bin an empty vector");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    Fail(ErrorCode::kInvalidArgument, "non-finite factor value");
  }
  BinnedVariable out;
  out.counts.assign(bins, 0);
  out.assignments.resize(values.size());
  const double width = hi > lo ? (hi - lo) / bins : 1.0;
  out.edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) out.edges[b] = lo + width * b;
  if (hi > lo) out.edges[bins] = hi;
  for (std::size_t i = 0; i < values.size(); ++i) {
    int b = static_cast<int>((values[i] - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    out.assignments[i] = static_cast<std::uint32_t>(b);
    ++out.counts[b];
  }
  return out;
}

double Entropy(std::span<const int> labels) {
  if (labels.empty()) Fail(ErrorCode::kInvalidArgument, "entropy of an empty vector");
  std::vector<double> counts(NumClasses(labels), 0.0);
  for (int y : labels) counts[y] += 1.0;
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (double c : counts) h -= PlogP(c, n);
  return std::max(0.0, h);
}

double MutualInformation(std::span<const int> labels,
                         std::span<const double> factor, int bins) {
  if (labels.size() != factor.size()) {
    Fail(ErrorCode::kInvalidArgument, "labels and factor differ in length");
  }
  const int classes = NumClasses(labels);
  const BinnedVariable binned = BinEqualWidth(factor, bins);
  std::vector<double> joint(static_cast<std::size_t>(bins) * classes, 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    joint[static_cast<std::size_t>(binned.assignments[i]) * classes + labels[i]] += 1.0;
  }
  const double n = static_cast<double>(labels.size());
  // H(y|F) = -sum_{z,c} P(c, z) log P(c, z) / P(z)
  double conditional = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double bin_count = static_cast<double>(binned.counts[b]);
    if (bin_count == 0.0) continue;
    for (int c = 0; c < classes; ++c) {
      const double count = joint[static_cast<std::size_t>(b) * classes + c];
      if (count == 0.0) continue;
      conditional -= (count / n) * std::log2(count / bin_count);
    }
  }
  const double h = Entropy(labels);
  return std::clamp(h - conditional, 0.0, h);
}

ImportanceRanking RankFactors(std::span<const FactorScores> scores,
                              std::span<const int> labels, int bins) {
  if (scores.empty()) Fail(ErrorCode::kInvalidArgument, "no factor scores");
  const Eigen::Index k = scores.front().values.cols();
  Eigen::Index total = 0;
  for (const FactorScores& s : scores) {
    if (s.values.cols() != k) {
      Fail(ErrorCode::kInvalidArgument, "classes disagree on the number of factors");
    }
    total += s.values.rows();
  }
  if (static_cast<std::size_t>(total) != labels.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "score rows (" + std::to_string(total) + ") do not match labels (" +
             std::to_string(labels.size()) + ")");
  }

  ImportanceRanking ranking;
  std::vector<double> stacked(static_cast<std::size_t>(total));
  for (Eigen::Index f = 0; f < k; ++f) {
    std::size_t offset = 0;
    for (const FactorScores& s : scores) {
      for (Eigen::Index r = 0; r < s.values.rows(); ++r) {
        stacked[offset++] = s.values(r, f);
      }
    }
    ranking.push_back({static_cast<int>(f), MutualInformation(labels, stacked, bins)});
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedFactor& a, const RankedFactor& b) {
                     return a.weight > b.weight;
                   });
  return ranking;
}

RepresentativeSet MakeRepresentativeSet(const ImportanceRanking& ranking, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > ranking.size()) {
    Fail(ErrorCode::kOutOfRange, "k = " + std::to_string(k) + " outside [1, " +
                                     std::to_string(ranking.size()) + "]");
  }
  RepresentativeSet reps;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    reps.indices.push_back(ranking[i].factor);
    reps.raw_weights.push_back(ranking[i].weight);
    sum += ranking[i].weight;
  }
  for (double w : reps.raw_weights) {
    reps.normalized_weights.push_back(sum > 0.0 ? w / sum : 1.0 / k);
  }
  return reps;
}

RepresentativeSet PickRepresentatives(std::span<const FactorScores> scores,
                                      std::span<const int> labels, int k,
                                      int bins) {
  if (!scores.empty() && (k < 1 || k > scores.front().values.cols())) {
    Fail(ErrorCode::kOutOfRange,
         "k = " + std::to_string(k) + " outside [1, " +
             std::to_string(scores.front().values.cols()) + "]");
  }
  return MakeRepresentativeSet(RankFactors(scores, labels, bins), k);
}

}  // namespace trust
