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

#include "trust/timing.h"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "trust/error.h"

namespace trust {

LinearFit FitLine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(Stage::kBench, ErrorCode::kInvalidArgument, "line fit needs >= 2 paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw Error(Stage::kBench, ErrorCode::kDegenerateInput, "line fit needs distinct x values");
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

std::string MachineDescription() {
  char host[256] = {0};
  gethostname(host, sizeof(host) - 1);
  std::string cpu = "unknown";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
  return std::string(host) + "; " + cpu + "; " +
         std::to_string(std::thread::hardware_concurrency()) + " hardware threads";
}

std::string TimingRecordsToJson(const std::vector<TimingRecord>& records) {
  nlohmann::json doc = nlohmann::json::array();
  for (const TimingRecord& r : records) {
    doc.push_back({{"stage", r.stage},
                   {"samples", r.samples},
                   {"k", r.k},
                   {"seconds", r.seconds},
                   {"evaluations", r.evaluations},
                   {"workers", r.workers}});
  }
  return doc.dump(2) + "\n";
}

std::string TimingRecordsToText(const std::vector<TimingRecord>& records) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s%10s%5s%14s%12s%9s\n", "stage", "samples", "k",
                "seconds", "evals", "workers");
  out << buf;
  for (const TimingRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%-18s%10zu%5d%14.6f%12zu%9d\n", r.stage.c_str(), r.samples,
                  r.k, r.seconds, r.evaluations, r.workers);
    out << buf;
  }
  return out.str();
}

}  // namespace trust
