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

// Wall-clock timing records for the benchmark harness.

#ifndef TRUST_TIMING_H_
#define TRUST_TIMING_H_

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trust {

struct TimingRecord {
  std::string stage;
  std::size_t samples = 0;
  int k = 0;
  double seconds = 0.0;
  // Mode-search candidates scored; 0 for other stages.
  std::size_t evaluations = 0;
  int workers = 1;
};

// Monotonic wall clock.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  void Reset() { start_ = std::chrono::steady_clock::now(); }
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept. R^2 is 1 when y is
// constant and fitted exactly.
LinearFit FitLine(std::span<const double> x, std::span<const double> y);

// Host name, CPU model and hardware concurrency, for run manifests.
std::string MachineDescription();

std::string TimingRecordsToJson(const std::vector<TimingRecord>& records);
std::string TimingRecordsToText(const std::vector<TimingRecord>& records);

}  // namespace trust

#endif  // TRUST_TIMING_H_
