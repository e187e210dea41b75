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

#ifndef TRUST_ERROR_H_
#define TRUST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace trust {

// Pipeline stage that raised an error. Surfaces in CLI diagnostics.
enum class Stage {
  kData,
  kFamd,
  kReps,
  kMmg,
  kModeSearch,
  kMetrics,
  kExplainer,
  kPersistence,
  kPrimaryModel,
  kBench,
};

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kMissingColumn,
  kEmptyInput,
  kEmptyClass,
  kDegenerateInput,
  kInsufficientData,
  kSchemaMismatch,
  kVersionMismatch,
  kCorrupted,
  kOutOfRange,
};

std::string_view StageName(Stage stage);
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(Stage stage, ErrorCode code, const std::string& message);

  Stage stage() const { return stage_; }
  ErrorCode code() const { return code_; }

 private:
  Stage stage_;
  ErrorCode code_;
};

}  // namespace trust

#endif  // TRUST_ERROR_H_
