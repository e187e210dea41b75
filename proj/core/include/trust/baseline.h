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

// A minimal perturbation-based local surrogate: normal perturbations around
// the sample, labels from the black box, an exponential distance kernel and a
// weighted least-squares fit. Used as the speed baseline.

#ifndef TRUST_BASELINE_H_
#define TRUST_BASELINE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trust/data.h"
#include "trust/primary_model.h"

namespace trust {

inline constexpr int kMinPerturbations = 10;

struct SurrogateOptions {
  int perturbations = 5000;
  std::uint64_t seed = 1;
  // Kernel width in standardized units; 0 means 0.75 * sqrt(K).
  double kernel_width = 0.0;
  double ridge = 1e-6;
  // Class whose indicator is regressed; -1 means the sample's predicted class.
  int target_class = -1;
};

struct SurrogateExplanation {
  // Per feature, in units of one training standard deviation.
  std::vector<double> coefficients;
  double intercept = 0.0;
  int target_class = 0;
  double seconds = 0.0;
};

class LocalSurrogate {
 public:
  // `reference` supplies per-feature scales and must be quantitative-only.
  // Throws Error(kBench, kInvalidArgument) otherwise.
  LocalSurrogate(const BlackBoxClassifier& model, const Dataset& reference);

  // Throws Error(kBench, kInvalidArgument) for fewer than kMinPerturbations
  // perturbations or a schema mismatch.
  SurrogateExplanation Explain(const Dataset& samples, std::size_t row,
                               const SurrogateOptions& options) const;

 private:
  const BlackBoxClassifier& model_;
  Schema schema_;
  std::vector<double> scale_;
};

}  // namespace trust

#endif  // TRUST_BASELINE_H_
