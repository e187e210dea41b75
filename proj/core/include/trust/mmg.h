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

// One-dimensional multi-modal Gaussian densities, their EM fit, and the
// weighted log-likelihood argmax that turns them into an explanation.

#ifndef TRUST_MMG_H_
#define TRUST_MMG_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace trust {

inline constexpr double kSigmaFloor = 1e-9;

struct GaussianComponent {
  double weight = 1.0;
  double mean = 0.0;
  double sigma = 1.0;
  // log(weight) - log(sigma) - log(2 pi) / 2
  double alpha = 0.0;

  static GaussianComponent Make(double weight, double mean, double sigma);
};

class MmgDensity {
 public:
  MmgDensity() = default;
  MmgDensity(std::vector<GaussianComponent> components, int rep_index = 0,
             int class_id = 0);

  const std::vector<GaussianComponent>& components() const { return components_; }
  std::size_t num_modes() const { return components_.size(); }
  int rep_index() const { return rep_index_; }
  int class_id() const { return class_id_; }
  void set_owner(int rep_index, int class_id) {
    rep_index_ = rep_index;
    class_id_ = class_id;
  }

  // log sum_m exp(alpha_m - ((x - mu_m) / sigma_m)^2 / 2), max-shifted.
  double LogPdf(double x) const;
  double Pdf(double x) const;

 private:
  std::vector<GaussianComponent> components_;
  int rep_index_ = 0;
  int class_id_ = 0;
};

struct EmOptions {
  int max_iterations = 200;
  // Stop once the mean per-sample log-likelihood improves by less than this.
  double tolerance = 1e-6;
  double sigma_floor = kSigmaFloor;
};

struct EmFit {
  MmgDensity density;
  int iterations = 0;
  bool converged = false;
  // Some component hit the sigma floor.
  bool sigma_clamped = false;
  // Mean per-sample log-likelihood before each M-step, then at the final
  // parameters. Non-decreasing.
  std::vector<double> log_likelihood_trace;
};

// Throws Error(kMmg, kInsufficientData) if values.size() < 2 * modes and
// Error(kMmg, kInvalidArgument) for modes < 1 or non-finite data. Means start
// at evenly spaced quantiles, sigmas at stddev / modes, weights uniform; the
// seed only jitters means that start on identical values.
EmFit FitEm(std::span<const double> values, int modes, std::uint64_t seed,
            const EmOptions& options = {});

// Throws Error(kMmg, kInvalidArgument) for non-finite input.
double RepLogLikelihood(const MmgDensity& density, double value);

struct ClassLikelihood {
  int class_id = 0;
  std::vector<double> per_rep;
  // sum_i w_i * per_rep[i]
  double total = 0.0;
};

struct Explanation {
  // Row c: the sample projected with class c's factor model, representatives
  // only.
  Eigen::MatrixXd projected;
  std::vector<ClassLikelihood> per_class;
  int label = 0;
  // total(label) - best other total.
  double margin = 0.0;
  bool unseen_category = false;
};

// densities[i][c] is representative i's density for class c.
using DensityGrid = std::vector<std::vector<MmgDensity>>;

// `projected` is C x k. Ties go to the lowest class index.
Explanation ExplainProjected(const DensityGrid& densities,
                             std::span<const double> weights,
                             const Eigen::MatrixXd& projected);

// Index of the largest total, lowest index on ties, and best - runner-up.
std::pair<int, double> ArgmaxWithMargin(std::span<const double> totals);

}  // namespace trust

#endif  // TRUST_MMG_H_
