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
#ifndef TRUST_TOOLS_COMMANDS_H_
#define TRUST_TOOLS_COMMANDS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "run_config.h"

namespace trust::cli {

// Collects every file a command writes under --out, for the manifest.
class Outputs {
 public:
  explicit Outputs(std::filesystem::path root);
  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path Path(const std::string& name) const { return root_ / name; }
  void Write(const std::string& name, const std::string& content);
  // For files produced by other writers.
  void Record(const std::string& name) { files_.push_back(name); }
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

void RunSynth(const RunConfig& config, Outputs& out);
void RunBuild(const RunConfig& config, Outputs& out);
void RunExplain(const RunConfig& config, Outputs& out);
void RunEvaluate(const RunConfig& config, Outputs& out);
void RunModes(const RunConfig& config, Outputs& out);
void RunCurves(const RunConfig& config, Outputs& out);
void RunBench(const RunConfig& config, Outputs& out);

}  // namespace trust::cli

#endif  // TRUST_TOOLS_COMMANDS_H_
