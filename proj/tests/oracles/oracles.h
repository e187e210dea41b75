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

// Test-only reference implementations. They share no code with the library
// beyond plain containers.

#ifndef TRUST_TESTS_ORACLES_ORACLES_H_
#define TRUST_TESTS_ORACLES_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace trust::oracle {

using Matrix = std::vector<std::vector<double>>;  // row-major

struct EigenPairs {
  std::vector<double> values;  // descending
  Matrix vectors;              // vectors[i] is the i-th eigenvector
};

// Cyclic Jacobi rotations on a symmetric matrix.
inline EigenPairs JacobiEigen(Matrix a) {
  const std::size_t n = a.size();
  Matrix v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
  EigenPairs out;
  for (std::size_t i : order) {
    out.values.push_back(a[i][i]);
    std::vector<double> vec(n);
    for (std::size_t k = 0; k < n; ++k) vec[k] = v[k][i];
    out.vectors.push_back(vec);
  }
  return out;
}

struct Pca {
  std::vector<double> eigenvalues;
  Matrix scores;  // N x K
};

// PCA of z-scored columns (population standard deviation) through the
// eigendecomposition of their covariance matrix.
inline Pca PcaOracle(const Matrix& x) {
  const std::size_t n = x.size(), k = x.front().size();
  Matrix z(n, std::vector<double>(k));
  for (std::size_t j = 0; j < k; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x[i][j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (x[i][j] - mean) * (x[i][j] - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) z[i][j] = (x[i][j] - mean) / sd;
  }
  Matrix cov(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t i = 0; i < n; ++i) cov[a][b] += z[i][a] * z[i][b];
      cov[a][b] /= static_cast<double>(n);
    }
  }
  const EigenPairs eig = JacobiEigen(cov);
  Pca out;
  out.eigenvalues = eig.values;
  out.scores.assign(n, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < k; ++f) {
      for (std::size_t j = 0; j < k; ++j) out.scores[i][f] += z[i][j] * eig.vectors[f][j];
    }
  }
  return out;
}

// Equal-width bin of x over [lo, hi]; the maximum falls in the last bin.
inline int OracleBin(double x, double lo, double hi, int bins) {
  if (!(hi > lo)) return 0;
  const int b = static_cast<int>((x - lo) / ((hi - lo) / bins));
  return std::min(std::max(b, 0), bins - 1);
}

// sum over the joint histogram of p(y, b) log2(p(y, b) / (p(y) p(b))).
inline double BruteForceMutualInformation(const std::vector<int>& labels,
                                          const std::vector<double>& factor, int bins) {
  const auto [lo, hi] = std::minmax_element(factor.begin(), factor.end());
  std::map<std::pair<int, int>, long double> joint;
  std::map<int, long double> py, pb;
  const long double n = static_cast<long double>(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int b = OracleBin(factor[i], *lo, *hi, bins);
    joint[{labels[i], b}] += 1.0L / n;
    py[labels[i]] += 1.0L / n;
    pb[b] += 1.0L / n;
  }
  long double mi = 0.0L;
  for (const auto& [key, p] : joint) {
    mi += p * std::log2(p / (py[key.first] * pb[key.second]));
  }
  return static_cast<double>(mi);
}

inline double BruteForceEntropy(const std::vector<int>& labels) {
  std::map<int, double> counts;
  for (int y : labels) counts[y] += 1.0;
  double h = 0.0;
  for (const auto& [y, c] : counts) {
    const double p = c / static_cast<double>(labels.size());
    h -= p * std::log2(p);
  }
  return h;
}

// Cramer's V squared from the contingency table of two code vectors.
inline double BruteForceCramerV2(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> ra, rb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    ra[a[i]] += 1.0;
    rb[b[i]] += 1.0;
  }
  const double n = static_cast<double>(a.size());
  double chi2 = 0.0;
  for (const auto& [x, cx] : ra) {
    for (const auto& [y, cy] : rb) {
      const double expected = cx * cy / n;
      const auto it = joint.find({x, y});
      const double observed = it == joint.end() ? 0.0 : it->second;
      chi2 += (observed - expected) * (observed - expected) / expected;
    }
  }
  const double m = static_cast<double>(std::min(ra.size(), rb.size())) - 1.0;
  return m > 0.0 ? chi2 / (n * m) : 0.0;
}

// Binary or multiclass MCC from reference/assigned label vectors, written out
// from the covariance form.
inline double OracleMcc(const std::vector<int>& truth, const std::vector<int>& pred, int classes) {
  const double n = static_cast<double>(truth.size());
  double cov_tp = 0.0, cov_tt = 0.0, cov_pp = 0.0;
  for (int c = 0; c < classes; ++c) {
    double mt = 0.0, mp = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      mt += truth[i] == c;
      mp += pred[i] == c;
    }
    mt /= n;
    mp /= n;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const double t = (truth[i] == c) - mt;
      const double p = (pred[i] == c) - mp;
      cov_tp += t * p;
      cov_tt += t * t;
      cov_pp += p * p;
    }
  }
  if (cov_tt == 0.0 || cov_pp == 0.0) return 0.0;
  return cov_tp / std::sqrt(cov_tt * cov_pp);
}

}  // namespace trust::oracle

#endif  // TRUST_TESTS_ORACLES_ORACLES_H_
