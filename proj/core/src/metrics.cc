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

#include "trust/metrics.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kMetrics, code, message);
}

std::string ClassName(const std::vector<std::string>& names, int c) {
  return c < static_cast<int>(names.size()) ? names[c] : std::to_string(c);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(int num_classes)
    : num_classes_(num_classes),
      counts_(static_cast<std::size_t>(num_classes) * num_classes, 0) {
  if (num_classes < 2) Fail(ErrorCode::kInvalidArgument, "need at least 2 classes");
}

ConfusionMatrix ConfusionMatrix::FromBinary(std::uint64_t tn, std::uint64_t fp,
                                            std::uint64_t fn, std::uint64_t tp) {
  ConfusionMatrix cm(2);
  cm.Add(0, 0, tn);
  cm.Add(0, 1, fp);
  cm.Add(1, 0, fn);
  cm.Add(1, 1, tp);
  return cm;
}

ConfusionMatrix ConfusionMatrix::FromLabels(std::span<const int> reference,
                                            std::span<const int> assigned,
                                            int num_classes) {
  if (reference.size() != assigned.size()) {
    Fail(ErrorCode::kInvalidArgument, "label vectors differ in length");
  }
  ConfusionMatrix cm(num_classes);
  for (std::size_t i = 0; i < reference.size(); ++i) cm.Add(reference[i], assigned[i]);
  return cm;
}

void ConfusionMatrix::Add(int reference, int assigned, std::uint64_t count) {
  if (reference < 0 || reference >= num_classes_ || assigned < 0 ||
      assigned >= num_classes_) {
    Fail(ErrorCode::kOutOfRange, "class index outside the confusion matrix");
  }
  counts_[static_cast<std::size_t>(reference) * num_classes_ + assigned] += count;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts_) sum += c;
  return sum;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t sum = 0;
  for (int c = 0; c < num_classes_; ++c) sum += at(c, c);
  return sum;
}

std::uint64_t ConfusionMatrix::tp(int positive) const { return at(positive, positive); }

std::uint64_t ConfusionMatrix::fn(int positive) const {
  std::uint64_t sum = 0;
  for (int b = 0; b < num_classes_; ++b) {
    if (b != positive) sum += at(positive, b);
  }
  return sum;
}

std::uint64_t ConfusionMatrix::fp(int positive) const {
  std::uint64_t sum = 0;
  for (int a = 0; a < num_classes_; ++a) {
    if (a != positive) sum += at(a, positive);
  }
  return sum;
}

std::uint64_t ConfusionMatrix::tn(int positive) const {
  return total() - tp(positive) - fn(positive) - fp(positive);
}

double Mcc(const ConfusionMatrix& cm) {
  if (cm.total() == 0) Fail(ErrorCode::kEmptyInput, "MCC of an empty confusion matrix");
  if (cm.num_classes() == 2) {
    const long double tp = cm.tp(1), tn = cm.tn(1), fp = cm.fp(1), fn = cm.fn(1);
    const long double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denom == 0.0L) return 0.0;
    return static_cast<double>((tp * tn - fp * fn) / std::sqrt(denom));
  }
  const int k = cm.num_classes();
  long double s = static_cast<long double>(cm.total());
  long double c = static_cast<long double>(cm.trace());
  long double sum_pt = 0.0L, sum_pp = 0.0L, sum_tt = 0.0L;
  for (int j = 0; j < k; ++j) {
    long double predicted = 0.0L, actual = 0.0L;
    for (int i = 0; i < k; ++i) {
      predicted += cm.at(i, j);
      actual += cm.at(j, i);
    }
    sum_pt += predicted * actual;
    sum_pp += predicted * predicted;
    sum_tt += actual * actual;
  }
  const long double denom = (s * s - sum_pp) * (s * s - sum_tt);
  if (denom <= 0.0L) return 0.0;
  return static_cast<double>((c * s - sum_pt) / std::sqrt(denom));
}

double Accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) Fail(ErrorCode::kEmptyInput, "accuracy of an empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
}

double UndetectedRate(const ConfusionMatrix& cm, int positive) {
  const std::uint64_t fn = cm.fn(positive);
  const std::uint64_t tp = cm.tp(positive);
  if (fn + tp == 0) {
    Fail(ErrorCode::kEmptyInput, "undetected rate needs positive-class samples");
  }
  return static_cast<double>(fn) / static_cast<double>(fn + tp);
}

MetricSummary Summarize(const ConfusionMatrix& cm, int positive) {
  MetricSummary s;
  s.mcc = Mcc(cm);
  s.accuracy = Accuracy(cm);
  if (cm.fn(positive) + cm.tp(positive) > 0) {
    s.undetected_rate = UndetectedRate(cm, positive);
    s.has_undetected_rate = true;
  }
  return s;
}

std::string MetricsToJson(const ConfusionMatrix& cm, int positive,
                          const std::vector<std::string>& class_names) {
  const MetricSummary s = Summarize(cm, positive);
  nlohmann::json counts = nlohmann::json::array();
  for (int a = 0; a < cm.num_classes(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < cm.num_classes(); ++b) row.push_back(cm.at(a, b));
    counts.push_back(row);
  }
  nlohmann::json names = nlohmann::json::array();
  for (int c = 0; c < cm.num_classes(); ++c) names.push_back(ClassName(class_names, c));
  nlohmann::json doc = {
      {"classes", names},
      {"positive_class", positive},
      {"confusion_matrix", counts},
      {"total", cm.total()},
      {"mcc", s.mcc},
      {"accuracy", s.accuracy},
  };
  doc["undetected_rate"] =
      s.has_undetected_rate ? nlohmann::json(s.undetected_rate) : nlohmann::json();
  return doc.dump(2) + "\n";
}

std::string MetricsToText(const ConfusionMatrix& cm, int positive,
                          const std::vector<std::string>& class_names) {
  const MetricSummary s = Summarize(cm, positive);
  std::ostringstream out;
  std::size_t width = 10;
  for (int c = 0; c < cm.num_classes(); ++c) {
    width = std::max(width, ClassName(class_names, c).size() + 2);
  }
  char buf[64];
  out << "confusion matrix (rows: reference, columns: assigned)\n";
  out << std::string(width, ' ');
  for (int b = 0; b < cm.num_classes(); ++b) {
    std::snprintf(buf, sizeof(buf), "%*s", static_cast<int>(width),
                  ClassName(class_names, b).c_str());
    out << buf;
  }
  out << '\n';
  for (int a = 0; a < cm.num_classes(); ++a) {
    std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(width),
                  ClassName(class_names, a).c_str());
    out << buf;
    for (int b = 0; b < cm.num_classes(); ++b) {
      std::snprintf(buf, sizeof(buf), "%*llu", static_cast<int>(width),
                    static_cast<unsigned long long>(cm.at(a, b)));
      out << buf;
    }
    out << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%-10s%10.4f\n", "MCC", s.mcc);
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-10s%10.4f\n", "Accuracy", s.accuracy);
  out << buf;
  if (s.has_undetected_rate) {
    std::snprintf(buf, sizeof(buf), "%-10s%10.4f\n", "UR", s.undetected_rate);
    out << buf;
  }
  return out.str();
}

}  // namespace trust
