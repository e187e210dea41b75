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

// Selection of per-class mode counts for one representative by grid search
// over a zone of candidate counts, scored by the MCC of density-argmax
// labeling against the class of origin.

#ifndef TRUST_MODESEARCH_H_
#define TRUST_MODESEARCH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "trust/mmg.h"

namespace trust {

struct SearchZone {
  // Per-class inclusive bounds on the mode count.
  std::vector<int> lo;
  std::vector<int> hi;
  int subzone_edge = 5;

  static SearchZone Uniform(int num_classes, int lo = 1, int hi = 20,
                            int subzone_edge = 5);

  int num_classes() const { return static_cast<int>(lo.size()); }
  std::size_t num_points() const;
  // Throws Error(kModeSearch, kInvalidArgument) unless 1 <= lo <= hi and the
  // edge is positive, or if num_classes differs from `expected_classes`.
  void Validate(int expected_classes) const;
};

struct ModeAssignment {
  // modes[c] = M^c.
  std::vector<int> modes;
  double score = -1.0;
  // Distinct candidates scored by the search that produced this.
  std::size_t evaluations = 0;
  // The winner could not be fitted (every candidate lacked data).
  bool insufficient_data = false;
};

// Scores candidate mode vectors for one representative. EM fits are cached per
// (class, M) and every fit uses the same seed, so a candidate always gets the
// same score.
class CandidateScorer {
 public:
  // values[c] holds class c's representative values.
  CandidateScorer(std::vector<std::vector<double>> values, std::uint64_t seed,
                  EmOptions options = {});

  int num_classes() const { return static_cast<int>(values_.size()); }

  // MCC in [-1, 1]; -1 if some class has fewer than 2 * M^c values.
  double Score(std::span<const int> modes);
  // Like Score, but sets *insufficient when data is lacking.
  double Score(std::span<const int> modes, bool* insufficient);

  // Number of distinct candidates scored so far.
  std::size_t evaluations() const { return memo_.size(); }

 private:
  // Log-density of every pooled value under class c's M-mode fit.
  const std::vector<double>& LogDensities(int c, int modes);

  std::vector<std::vector<double>> values_;
  std::vector<int> origin_;
  std::uint64_t seed_;
  EmOptions options_;
  std::map<std::pair<int, int>, std::vector<double>> fits_;
  std::map<std::vector<int>, std::pair<double, bool>> memo_;
};

// One-shot scoring: fits each class with the given counts and returns the MCC
// of argmax labeling. Sets *insufficient when data is lacking.
double ScoreAssignment(std::span<const std::vector<double>> values,
                       std::span<const int> modes, std::uint64_t seed,
                       bool* insufficient = nullptr);

// true if candidate a beats b: higher score, then smaller total mode count,
// then lexicographically smaller.
bool BetterCandidate(double score_a, std::span<const int> a, double score_b,
                     std::span<const int> b);

// Exhaustive search of every lattice point in the zone.
ModeAssignment GridModeSelect(CandidateScorer& scorer, const SearchZone& zone);
ModeAssignment GridModeSelect(std::vector<std::vector<double>> values,
                              const SearchZone& zone, std::uint64_t seed);

// Scores the center of each sub-zone, then searches the best sub-zone
// exhaustively. Sub-zones tile each axis from lo in steps of subzone_edge; the
// last one may be partial. Centers are floor midpoints.
ModeAssignment FastGridSelect(CandidateScorer& scorer, const SearchZone& zone);
ModeAssignment FastGridSelect(std::vector<std::vector<double>> values,
                              const SearchZone& zone, std::uint64_t seed);

}  // namespace trust

#endif  // TRUST_MODESEARCH_H_
