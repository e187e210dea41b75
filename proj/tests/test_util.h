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

#ifndef TRUST_TESTS_TEST_UTIL_H_
#define TRUST_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trust/data.h"
#include "trust/error.h"

namespace trust::testing {

inline Schema QuantSchema(int k, std::vector<std::string> classes = {"normal", "attack"}) {
  Schema s;
  for (int j = 0; j < k; ++j) s.features.push_back({"f" + std::to_string(j), FeatureKind::kQuantitative});
  s.label_column = "label";
  s.class_names = std::move(classes);
  return s;
}

inline Dataset FromMatrix(const Eigen::MatrixXd& x) {
  Dataset d(QuantSchema(static_cast<int>(x.cols())));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) d.AppendQuantitative(c, x(r, c));
    d.CommitRow();
  }
  return d;
}

inline Eigen::MatrixXd RandomMatrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

inline std::vector<double> Draws(std::size_t n, double mean, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mean, sigma);
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

// Equal mixture of N(a, 1) and N(b, 1).
inline std::vector<double> TwoModeDraws(std::size_t n, double a, double b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> v(n);
  for (double& x : v) x = (coin(rng) ? b : a) + normal(rng);
  return v;
}

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

}  // namespace trust::testing

#endif  // TRUST_TESTS_TEST_UTIL_H_
