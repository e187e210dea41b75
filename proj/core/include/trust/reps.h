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

// Ranks factors by mutual information with the predicted labels and keeps the
// top k as representatives.

#ifndef TRUST_REPS_H_
#define TRUST_REPS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trust/famd.h"

namespace trust {

inline constexpr int kDefaultBins = 64;

struct BinnedVariable {
  // B + 1 strictly increasing boundaries.
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  std::vector<std::uint32_t> assignments;

  std::size_t num_bins() const { return counts.size(); }
};

// Equal-width bins over [min, max]. A constant input lands in bin 0.
BinnedVariable BinEqualWidth(std::span<const double> values, int bins);

// Shannon entropy in bits of a label vector.
double Entropy(std::span<const int> labels);

// MI(y; F) = H(y) - H(y | binned F), in bits, from the joint contingency table.
double MutualInformation(std::span<const int> labels,
                         std::span<const double> factor, int bins);

struct RankedFactor {
  int factor = 0;
  double weight = 0.0;
};

// One entry per factor, by weight descending; ties keep the lower index first.
using ImportanceRanking = std::vector<RankedFactor>;

struct RepresentativeSet {
  std::vector<int> indices;
  std::vector<double> raw_weights;
  // raw / sum(raw); uniform if every raw weight is zero.
  std::vector<double> normalized_weights;

  std::size_t size() const { return indices.size(); }
};

// `scores[c]` are class c's factor scores; `labels` must list the classes of
// the stacked rows in the same order (scores[0] rows first, ...).
ImportanceRanking RankFactors(std::span<const FactorScores> scores,
                              std::span<const int> labels, int bins);

// Throws Error(kReps, kOutOfRange) unless 1 <= k <= K.
RepresentativeSet PickRepresentatives(std::span<const FactorScores> scores,
                                      std::span<const int> labels, int k,
                                      int bins = kDefaultBins);

RepresentativeSet MakeRepresentativeSet(const ImportanceRanking& ranking, int k);

}  // namespace trust

#endif  // TRUST_REPS_H_
