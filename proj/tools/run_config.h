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
#ifndef TRUST_TOOLS_RUN_CONFIG_H_
#define TRUST_TOOLS_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trust/data.h"
#include "trust/modesearch.h"

namespace trust::cli {

struct RunConfig {
  std::string command;
  int k = 8;
  int bins = 64;
  int zone_min = 1;
  int zone_max = 20;
  int subzone = 5;
  std::uint64_t seed = 42;
  double ratio = 0.8;
  // Class name or 0-based id; empty means class 1.
  std::string positive_class;
  std::string data;
  std::string schema;
  std::string predictions;
  std::string core;
  std::string out = "trust_out";
  int workers = 1;

  // build
  bool reference = false;
  bool full_search = false;
  // explain
  std::size_t report_rows = 20;
  // curves
  int rep = 0;
  int points = 512;
  // synth
  std::string spec;
  std::size_t rows = 10000;
  int noise = 4;
  // bench
  std::vector<std::size_t> sizes = {1000, 5000, 10000, 50000, 100000};
  std::size_t build_rows = 5000;
  std::size_t baseline_samples = 1000;
  int perturbations = 5000;
  int repeats = 3;

  // Throws Error(kBench, kInvalidArgument) naming the offending field.
  void Validate() const;
  SearchZone Zone(int num_classes) const;
  int PositiveClass(const Schema& schema) const;
  std::string ToJson() const;
};

}  // namespace trust::cli

#endif  // TRUST_TOOLS_RUN_CONFIG_H_
