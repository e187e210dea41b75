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

#include "trust/mmg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kMmg, code, message);
}

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi) / 2
constexpr double kMinWeight = 1e-300;

double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

GaussianComponent GaussianComponent::Make(double weight, double mean, double sigma) {
  GaussianComponent c;
  c.weight = weight;
  c.mean = mean;
  c.sigma = sigma;
  c.alpha = std::log(weight) - std::log(sigma) - kHalfLog2Pi;
  return c;
}

MmgDensity::MmgDensity(std::vector<GaussianComponent> components, int rep_index,
                       int class_id)
    : components_(std::move(components)), rep_index_(rep_index), class_id_(class_id) {
  if (components_.empty()) Fail(ErrorCode::kInvalidArgument, "density without components");
}

double MmgDensity::LogPdf(double x) const {
  if (components_.size() == 1) {
    const GaussianComponent& c = components_.front();
    const double d = (x - c.mean) / c.sigma;
    return c.alpha - 0.5 * d * d;
  }
  double terms[64];
  std::vector<double> heap;
  double* t = terms;
  if (components_.size() > std::size(terms)) {
    heap.resize(components_.size());
    t = heap.data();
  }
  double max_term = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < components_.size(); ++m) {
    const GaussianComponent& c = components_[m];
    const double d = (x - c.mean) / c.sigma;
    t[m] = c.alpha - 0.5 * d * d;
    max_term = std::max(max_term, t[m]);
  }
  double sum = 0.0;
  for (std::size_t m = 0; m < components_.size(); ++m) sum += std::exp(t[m] - max_term);
  return max_term + std::log(sum);
}

double MmgDensity::Pdf(double x) const { return std::exp(LogPdf(x)); }

EmFit FitEm(std::span<const double> values, int modes, std::uint64_t seed,
            const EmOptions& options) {
  if (modes < 1) Fail(ErrorCode::kInvalidArgument, "mode count must be >= 1");
  const std::size_t n = values.size();
  if (n < 2 * static_cast<std::size_t>(modes)) {
    Fail(ErrorCode::kInsufficientData,
         std::to_string(n) + " values cannot support " + std::to_string(modes) +
             " modes (need " + std::to_string(2 * modes) + ")");
  }
  for (double v : values) {
    if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "non-finite value");
  }
  const double floor = options.sigma_floor;
  const auto m_count = static_cast<std::size_t>(modes);

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / static_cast<double>(n));

  std::vector<double> mu(m_count);
  std::vector<double> sigma(m_count, std::max(stddev / modes, floor));
  std::vector<double> weight(m_count, 1.0 / modes);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  for (std::size_t m = 0; m < m_count; ++m) {
    mu[m] = Quantile(sorted, (static_cast<double>(m) + 0.5) / modes);
    const bool duplicate = std::find(mu.begin(), mu.begin() + m, mu[m]) != mu.begin() + m;
    if (duplicate) mu[m] += jitter(rng) * 1e-3 * std::max(stddev, floor);
  }

  EmFit fit;
  std::vector<double> resp(n * m_count);
  std::vector<double> alpha(m_count);
  double previous = -std::numeric_limits<double>::infinity();
  int iteration = 0;
  while (true) {
    for (std::size_t m = 0; m < m_count; ++m) {
      alpha[m] = std::log(std::max(weight[m], kMinWeight)) - std::log(sigma[m]) - kHalfLog2Pi;
    }
    // E-step.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double* r = &resp[i * m_count];
      double max_term = -std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < m_count; ++m) {
        const double d = (values[i] - mu[m]) / sigma[m];
        r[m] = alpha[m] - 0.5 * d * d;
        max_term = std::max(max_term, r[m]);
      }
      double sum = 0.0;
      for (std::size_t m = 0; m < m_count; ++m) {
        r[m] = std::exp(r[m] - max_term);
        sum += r[m];
      }
      const double inv = 1.0 / sum;
      for (std::size_t m = 0; m < m_count; ++m) r[m] *= inv;
      total += max_term + std::log(sum);
    }
    const double mean_ll = total / static_cast<double>(n);
    fit.log_likelihood_trace.push_back(mean_ll);
    if (iteration > 0 && mean_ll - previous < options.tolerance) {
      fit.converged = true;
      break;
    }
    if (iteration >= options.max_iterations) break;

    // M-step.
    for (std::size_t m = 0; m < m_count; ++m) {
      double nk = 0.0;
      double sx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        nk += resp[i * m_count + m];
        sx += resp[i * m_count + m] * values[i];
      }
      if (!(nk > 0.0)) {
        weight[m] = 0.0;
        continue;
      }
      const double new_mu = sx / nk;
      double sxx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - new_mu;
        sxx += resp[i * m_count + m] * d * d;
      }
      mu[m] = new_mu;
      sigma[m] = std::max(std::sqrt(sxx / nk), floor);
      weight[m] = nk / static_cast<double>(n);
    }
    previous = mean_ll;
    ++iteration;
  }

  double weight_sum = 0.0;
  for (double& w : weight) {
    w = std::max(w, kMinWeight);
    weight_sum += w;
  }
  std::vector<GaussianComponent> components;
  for (std::size_t m = 0; m < m_count; ++m) {
    components.push_back(GaussianComponent::Make(weight[m] / weight_sum, mu[m], sigma[m]));
    if (sigma[m] <= floor) fit.sigma_clamped = true;
  }
  fit.density = MmgDensity(std::move(components));
  fit.iterations = iteration;
  return fit;
}

double RepLogLikelihood(const MmgDensity& density, double value) {
  if (!std::isfinite(value)) Fail(ErrorCode::kInvalidArgument, "non-finite sample value");
  return density.LogPdf(value);
}

std::pair<int, double> ArgmaxWithMargin(std::span<const double> totals) {
  if (totals.empty()) Fail(ErrorCode::kInvalidArgument, "no class totals");
  int best = 0;
  for (std::size_t c = 1; c < totals.size(); ++c) {
    if (totals[c] > totals[best]) best = static_cast<int>(c);
  }
  double runner_up = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < totals.size(); ++c) {
    if (static_cast<int>(c) != best) runner_up = std::max(runner_up, totals[c]);
  }
  const double margin = totals.size() > 1 ? totals[best] - runner_up : 0.0;
  return {best, margin};
}

Explanation ExplainProjected(const DensityGrid& densities,
                             std::span<const double> weights,
                             const Eigen::MatrixXd& projected) {
  const auto k = static_cast<std::size_t>(projected.cols());
  const auto classes = static_cast<std::size_t>(projected.rows());
  if (densities.size() != k || weights.size() != k) {
    Fail(ErrorCode::kInvalidArgument, "representative count mismatch");
  }
  Explanation out;
  out.projected = projected;
  std::vector<double> totals(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    ClassLikelihood likelihood;
    likelihood.class_id = static_cast<int>(c);
    likelihood.per_rep.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (densities[i].size() != classes) {
        Fail(ErrorCode::kInvalidArgument, "class count mismatch");
      }
      likelihood.per_rep[i] = RepLogLikelihood(
          densities[i][c],
          projected(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)));
      likelihood.total += weights[i] * likelihood.per_rep[i];
    }
    totals[c] = likelihood.total;
    out.per_class.push_back(std::move(likelihood));
  }
  std::tie(out.label, out.margin) = ArgmaxWithMargin(totals);
  return out;
}

}  // namespace trust
