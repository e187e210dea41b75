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

#include "trust/error.h"

namespace trust {

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kData: return "data";
    case Stage::kFamd: return "famd";
    case Stage::kReps: return "reps";
    case Stage::kMmg: return "mmg";
    case Stage::kModeSearch: return "modesearch";
    case Stage::kMetrics: return "metrics";
    case Stage::kExplainer: return "explainer";
    case Stage::kPersistence: return "persistence";
    case Stage::kPrimaryModel: return "primary_model";
    case Stage::kBench: return "bench";
  }
  return "unknown";
}

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kMissingColumn: return "missing column";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kEmptyClass: return "empty class";
    case ErrorCode::kDegenerateInput: return "degenerate input";
    case ErrorCode::kInsufficientData: return "insufficient data";
    case ErrorCode::kSchemaMismatch: return "schema mismatch";
    case ErrorCode::kVersionMismatch: return "version mismatch";
    case ErrorCode::kCorrupted: return "corrupted file";
    case ErrorCode::kOutOfRange: return "out of range";
  }
  return "unknown";
}

Error::Error(Stage stage, ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(StageName(stage)) + ": " +
                         std::string(ErrorCodeName(code)) + ": " + message),
      stage_(stage),
      code_(code) {}

}  // namespace trust
