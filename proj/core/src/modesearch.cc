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

#include "trust/modesearch.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "trust/error.h"
#include "trust/metrics.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kModeSearch, code, message);
}

int TotalModes(std::span<const int> modes) {
  return std::accumulate(modes.begin(), modes.end(), 0);
}

// Visits every point of the box [lo, hi] in lexicographic order.
void ForEachPoint(const std::vector<int>& lo, const std::vector<int>& hi,
                  const std::function<void(std::span<const int>)>& visit) {
  std::vector<int> point = lo;
  while (true) {
    visit(point);
    int axis = static_cast<int>(point.size()) - 1;
    while (axis >= 0 && point[axis] == hi[axis]) {
      point[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) return;
    ++point[axis];
  }
}

struct Best {
  std::vector<int> modes;
  double score = -std::numeric_limits<double>::infinity();
  bool insufficient = false;

  void Offer(double s, std::span<const int> candidate, bool lacking) {
    if (modes.empty() || BetterCandidate(s, candidate, score, modes)) {
      modes.assign(candidate.begin(), candidate.end());
      score = s;
      insufficient = lacking;
    }
  }
};

Best SearchBox(CandidateScorer& scorer, const std::vector<int>& lo,
               const std::vector<int>& hi) {
  Best best;
  ForEachPoint(lo, hi, [&](std::span<const int> point) {
    bool lacking = false;
    const double s = scorer.Score(point, &lacking);
    best.Offer(s, point, lacking);
  });
  return best;
}

}  // namespace

SearchZone SearchZone::Uniform(int num_classes, int lo, int hi, int subzone_edge) {
  SearchZone zone;
  zone.lo.assign(static_cast<std::size_t>(std::max(num_classes, 0)), lo);
  zone.hi.assign(static_cast<std::size_t>(std::max(num_classes, 0)), hi);
  zone.subzone_edge = subzone_edge;
  return zone;
}

std::size_t SearchZone::num_points() const {
  if (lo.empty()) return 0;
  std::size_t n = 1;
  for (std::size_t c = 0; c < lo.size(); ++c) {
    if (hi[c] < lo[c]) return 0;
    n *= static_cast<std::size_t>(hi[c] - lo[c] + 1);
  }
  return n;
}

void SearchZone::Validate(int expected_classes) const {
  if (lo.size() != hi.size()) Fail(ErrorCode::kInvalidArgument, "zone bounds differ in length");
  if (lo.empty()) Fail(ErrorCode::kInvalidArgument, "empty search zone");
  if (static_cast<int>(lo.size()) != expected_classes) {
    Fail(ErrorCode::kInvalidArgument,
         "zone has " + std::to_string(lo.size()) + " axes for " +
             std::to_string(expected_classes) + " classes");
  }
  for (std::size_t c = 0; c < lo.size(); ++c) {
    if (lo[c] < 1 || hi[c] < lo[c]) {
      Fail(ErrorCode::kInvalidArgument,
           "zone axis " + std::to_string(c) + " must satisfy 1 <= lo <= hi");
    }
  }
  if (subzone_edge < 1) Fail(ErrorCode::kInvalidArgument, "sub-zone edge must be positive");
}

CandidateScorer::CandidateScorer(std::vector<std::vector<double>> values,
                                 std::uint64_t seed, EmOptions options)
    : values_(std::move(values)), seed_(seed), options_(options) {
  if (values_.size() < 2) Fail(ErrorCode::kInvalidArgument, "need at least 2 classes");
  for (std::size_t c = 0; c < values_.size(); ++c) {
    origin_.insert(origin_.end(), values_[c].size(), static_cast<int>(c));
  }
}

const std::vector<double>& CandidateScorer::LogDensities(int c, int modes) {
  const auto key = std::make_pair(c, modes);
  auto it = fits_.find(key);
  if (it != fits_.end()) return it->second;
  const EmFit fit = FitEm(values_[c], modes, seed_, options_);
  std::vector<double> logs;
  logs.reserve(origin_.size());
  for (const auto& cls : values_) {
    for (double v : cls) logs.push_back(fit.density.LogPdf(v));
  }
  return fits_.emplace(key, std::move(logs)).first->second;
}

double CandidateScorer::Score(std::span<const int> modes) {
  return Score(modes, nullptr);
}

double CandidateScorer::Score(std::span<const int> modes, bool* insufficient) {
  if (static_cast<int>(modes.size()) != num_classes()) {
    Fail(ErrorCode::kInvalidArgument, "candidate has the wrong number of classes");
  }
  std::vector<int> key(modes.begin(), modes.end());
  auto it = memo_.find(key);
  if (it == memo_.end()) {
    bool lacking = false;
    for (int c = 0; c < num_classes(); ++c) {
      if (modes[c] < 1) Fail(ErrorCode::kInvalidArgument, "mode counts must be positive");
      if (values_[c].size() < 2 * static_cast<std::size_t>(modes[c])) lacking = true;
    }
    double score = -1.0;
    if (!lacking) {
      std::vector<const std::vector<double>*> logs;
      for (int c = 0; c < num_classes(); ++c) logs.push_back(&LogDensities(c, modes[c]));
      std::vector<int> assigned(origin_.size());
      for (std::size_t j = 0; j < origin_.size(); ++j) {
        int arg = 0;
        for (int c = 1; c < num_classes(); ++c) {
          if ((*logs[c])[j] > (*logs[arg])[j]) arg = c;
        }
        assigned[j] = arg;
      }
      score = Mcc(ConfusionMatrix::FromLabels(origin_, assigned, num_classes()));
    }
    it = memo_.emplace(std::move(key), std::make_pair(score, lacking)).first;
  }
  if (insufficient != nullptr) *insufficient = it->second.second;
  return it->second.first;
}

double ScoreAssignment(std::span<const std::vector<double>> values,
                       std::span<const int> modes, std::uint64_t seed,
                       bool* insufficient) {
  CandidateScorer scorer(std::vector<std::vector<double>>(values.begin(), values.end()),
                         seed);
  return scorer.Score(modes, insufficient);
}

bool BetterCandidate(double score_a, std::span<const int> a, double score_b,
                     std::span<const int> b) {
  if (score_a != score_b) return score_a > score_b;
  const int total_a = TotalModes(a);
  const int total_b = TotalModes(b);
  if (total_a != total_b) return total_a < total_b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

ModeAssignment GridModeSelect(CandidateScorer& scorer, const SearchZone& zone) {
  zone.Validate(scorer.num_classes());
  const Best best = SearchBox(scorer, zone.lo, zone.hi);
  ModeAssignment result;
  result.modes = best.modes;
  result.score = best.score;
  result.insufficient_data = best.insufficient;
  result.evaluations = zone.num_points();
  return result;
}

ModeAssignment GridModeSelect(std::vector<std::vector<double>> values,
                              const SearchZone& zone, std::uint64_t seed) {
  CandidateScorer scorer(std::move(values), seed);
  return GridModeSelect(scorer, zone);
}

ModeAssignment FastGridSelect(CandidateScorer& scorer, const SearchZone& zone) {
  zone.Validate(scorer.num_classes());
  const std::size_t axes = zone.lo.size();
  // Sub-zone grid: index box [0, count-1] per axis.
  std::vector<int> first(axes, 0), last(axes);
  for (std::size_t c = 0; c < axes; ++c) {
    const int span = zone.hi[c] - zone.lo[c] + 1;
    last[c] = (span + zone.subzone_edge - 1) / zone.subzone_edge - 1;
  }
  auto bounds = [&](std::span<const int> cell, std::vector<int>& lo,
                    std::vector<int>& hi) {
    for (std::size_t c = 0; c < axes; ++c) {
      lo[c] = zone.lo[c] + cell[c] * zone.subzone_edge;
      hi[c] = std::min(zone.hi[c], lo[c] + zone.subzone_edge - 1);
    }
  };

  std::vector<int> lo(axes), hi(axes), center(axes);
  Best best_center;
  std::vector<int> best_cell;
  std::size_t centers = 0;
  ForEachPoint(first, last, [&](std::span<const int> cell) {
    ++centers;
    bounds(cell, lo, hi);
    for (std::size_t c = 0; c < axes; ++c) center[c] = (lo[c] + hi[c]) / 2;
    bool lacking = false;
    const double s = scorer.Score(center, &lacking);
    const std::vector<int> previous = best_center.modes;
    best_center.Offer(s, center, lacking);
    if (best_center.modes != previous) best_cell.assign(cell.begin(), cell.end());
  });

  bounds(best_cell, lo, hi);
  const Best best = SearchBox(scorer, lo, hi);
  ModeAssignment result;
  result.modes = best.modes;
  result.score = best.score;
  result.insufficient_data = best.insufficient;
  // The winning center lies inside its sub-zone and is not scored twice.
  std::size_t interior = 1;
  for (std::size_t c = 0; c < axes; ++c) interior *= static_cast<std::size_t>(hi[c] - lo[c] + 1);
  result.evaluations = centers + interior - 1;
  return result;
}

ModeAssignment FastGridSelect(std::vector<std::vector<double>> values,
                              const SearchZone& zone, std::uint64_t seed) {
  CandidateScorer scorer(std::move(values), seed);
  return FastGridSelect(scorer, zone);
}

}  // namespace trust
