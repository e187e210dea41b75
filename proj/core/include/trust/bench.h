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
#ifndef TRUST_BENCH_H_
#define TRUST_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trust/modesearch.h"
#include "trust/synth.h"
#include "trust/reps.h"
#include "trust/timing.h"

namespace trust {

struct BenchConfig {
  std::vector<std::size_t> sizes = {1000, 5000, 10000, 50000, 100000};
  std::size_t build_rows = 5000;
  int k = 2;
  int bins = kDefaultBins;
  // Empty: Uniform(C, 1, 20, 5).
  SearchZone zone;
  std::uint64_t seed = 42;
  int workers = 1;
  // Best of this many timed passes per size.
  int repeats = 3;
  std::size_t baseline_samples = 1000;
  int perturbations = 5000;
  int noise_columns = 4;
};

struct BenchResult {
  std::vector<TimingRecord> records;
  // Explain seconds against N.
  LinearFit explain_fit;
  double build_seconds = 0.0;
  double trust_explain_seconds = 0.0;
  double baseline_seconds = 0.0;
  // Baseline time over TRUST explain time, and over build + explain.
  double speedup_explain = 0.0;
  double speedup_combined = 0.0;
  std::size_t fast_evaluations = 0;
  std::size_t full_evaluations = 0;
  double fast_score = 0.0;
  double full_score = 0.0;

  std::string ToJson() const;
  std::string ToText() const;
};

// Quantitative-only variant of the separable suite; the surrogate baseline
// cannot perturb categorical columns.
SynthSpec ScalingSuiteSpec(std::size_t rows, int noise);

BenchResult RunBench(const BenchConfig& config);

}  // namespace trust

#endif  // TRUST_BENCH_H_
