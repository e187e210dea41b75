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

#ifndef TRUST_METRICS_H_
#define TRUST_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace trust {

// counts(a, b) = samples of reference class a assigned class b.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int num_classes = 2);

  // Binary matrix with class 0 = negative (normal), class 1 = positive
  // (attack).
  static ConfusionMatrix FromBinary(std::uint64_t tn, std::uint64_t fp,
                                    std::uint64_t fn, std::uint64_t tp);
  static ConfusionMatrix FromLabels(std::span<const int> reference,
                                    std::span<const int> assigned,
                                    int num_classes);

  int num_classes() const { return num_classes_; }
  void Add(int reference, int assigned, std::uint64_t count = 1);
  std::uint64_t at(int reference, int assigned) const {
    return counts_[static_cast<std::size_t>(reference) * num_classes_ + assigned];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;

  // Binary accessors relative to `positive`; other classes count as negative.
  std::uint64_t tp(int positive = 1) const;
  std::uint64_t tn(int positive = 1) const;
  std::uint64_t fp(int positive = 1) const;
  std::uint64_t fn(int positive = 1) const;

 private:
  int num_classes_;
  std::vector<std::uint64_t> counts_;
};

// Matthews correlation coefficient; the Gorodkin generalization for more than
// two classes. A zero denominator gives 0. Throws on an empty matrix.
double Mcc(const ConfusionMatrix& cm);
double Accuracy(const ConfusionMatrix& cm);
// FN / (FN + TP). Throws if the positive class has no reference samples.
double UndetectedRate(const ConfusionMatrix& cm, int positive = 1);

struct MetricSummary {
  double mcc = 0.0;
  double accuracy = 0.0;
  double undetected_rate = 0.0;
  bool has_undetected_rate = false;
};

MetricSummary Summarize(const ConfusionMatrix& cm, int positive = 1);

// Structured (JSON) and aligned plain-text renderings.
std::string MetricsToJson(const ConfusionMatrix& cm, int positive,
                          const std::vector<std::string>& class_names = {});
std::string MetricsToText(const ConfusionMatrix& cm, int positive,
                          const std::vector<std::string>& class_names = {});

}  // namespace trust

#endif  // TRUST_METRICS_H_
