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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <unordered_map>

#include "trust/data.h"
#include "trust/error.h"

namespace trust {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kData, code, message);
}

// Splits RFC-4180 records. `line` tracks the physical line of the record start.
class CsvReader {
 public:
  explicit CsvReader(std::string text) : text_(std::move(text)) {}

  bool Next(std::vector<std::string>& fields) {
    fields.clear();
    while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    record_line_ = line_;
    std::string field;
    while (true) {
      field.clear();
      if (pos_ < text_.size() && text_[pos_] == '"') {
        ++pos_;
        while (true) {
          if (pos_ >= text_.size()) {
            Fail(ErrorCode::kParse, "unterminated quoted field at line " +
                                        std::to_string(record_line_));
          }
          const char ch = text_[pos_++];
          if (ch == '"') {
            if (pos_ < text_.size() && text_[pos_] == '"') {
              field.push_back('"');
              ++pos_;
            } else {
              break;
            }
          } else {
            if (ch == '\n') ++line_;
            field.push_back(ch);
          }
        }
      } else {
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '\n' &&
               text_[pos_] != '\r') {
          field.push_back(text_[pos_++]);
        }
      }
      fields.push_back(field);
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < text_.size() && text_[pos_] == '\r') ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '\n') {
        ++pos_;
        ++line_;
      }
      return true;
    }
  }

  std::size_t record_line() const { return record_line_; }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t record_line_ = 1;
};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool ParseNumber(std::string_view token, double& out) {
  token = Trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), out);
  return result.ec == std::errc() && result.ptr == token.data() + token.size() &&
         std::isfinite(out);
}

std::string Position(std::string_view source, std::size_t line,
                     const std::string& column) {
  return std::string(source) + ":" + std::to_string(line) + " column '" +
         column + "'";
}

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Dataset ReadCsv(std::istream& in, const Schema& schema, std::vector<int>* labels,
                std::string_view source) {
  schema.Validate();
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    text.erase(0, 3);
  }
  CsvReader reader(std::move(text));
  std::vector<std::string> fields;

  std::vector<std::string> header;
  if (schema.has_header) {
    if (!reader.Next(header)) Fail(ErrorCode::kEmptyInput, std::string(source) + " is empty");
    for (std::string& name : header) name = std::string(Trim(name));
  } else {
    header = schema.file_columns;
  }

  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!position.emplace(header[i], i).second) {
      Fail(ErrorCode::kSchemaMismatch,
           std::string(source) + ": duplicate header column '" + header[i] + "'");
    }
    const bool known = schema.FeatureIndex(header[i]) >= 0 ||
                       header[i] == schema.label_column ||
                       std::find(schema.ignored_columns.begin(),
                                 schema.ignored_columns.end(),
                                 header[i]) != schema.ignored_columns.end();
    if (!known) {
      Fail(ErrorCode::kSchemaMismatch, std::string(source) +
                                           ": column '" + header[i] +
                                           "' is not declared in the schema");
    }
  }
  std::vector<std::size_t> feature_pos;
  for (const Column& column : schema.features) {
    const auto it = position.find(column.name);
    if (it == position.end()) {
      Fail(ErrorCode::kMissingColumn,
           std::string(source) + ": missing column '" + column.name + "'");
    }
    feature_pos.push_back(it->second);
  }
  std::size_t label_pos = 0;
  if (labels != nullptr) {
    if (schema.label_column.empty() || !position.contains(schema.label_column)) {
      Fail(ErrorCode::kMissingColumn,
           std::string(source) + ": missing label column '" +
               schema.label_column + "'");
    }
    label_pos = position.at(schema.label_column);
    labels->clear();
  }

  Dataset data(schema);
  while (reader.Next(fields)) {
    const std::size_t line = reader.record_line();
    if (fields.size() != header.size()) {
      Fail(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line) +
                                  ": expected " + std::to_string(header.size()) +
                                  " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t col = 0; col < schema.features.size(); ++col) {
      const std::string& raw = fields[feature_pos[col]];
      const std::string& name = schema.features[col].name;
      if (Trim(raw).empty()) {
        Fail(ErrorCode::kParse, "missing value at " + Position(source, line, name));
      }
      if (schema.features[col].kind == FeatureKind::kQuantitative) {
        double value = 0.0;
        if (!ParseNumber(raw, value)) {
          Fail(ErrorCode::kParse, "cannot parse '" + raw + "' as a number at " +
                                      Position(source, line, name));
        }
        data.AppendQuantitative(col, value);
      } else {
        data.AppendCategory(col, Trim(raw));
      }
    }
    if (labels != nullptr) {
      const std::string token(Trim(fields[label_pos]));
      const std::optional<int> cls = schema.ClassOf(token);
      if (!cls) {
        Fail(ErrorCode::kParse, "unknown class label '" + token + "' at " +
                                    Position(source, line, schema.label_column));
      }
      labels->push_back(*cls);
    }
    data.CommitRow();
  }
  if (data.empty()) {
    Fail(ErrorCode::kEmptyInput, std::string(source) + " has no data rows");
  }
  return data;
}

Dataset LoadCsv(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return ReadCsv(in, schema, nullptr, path.string());
}

LabeledDataset LoadLabeledCsv(const std::filesystem::path& path,
                              const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<int> labels;
  Dataset data = ReadCsv(in, schema, &labels, path.string());
  return MakeLabeled(std::move(data), std::move(labels), schema.num_classes());
}

std::vector<int> ReadPredictions(std::istream& in, std::size_t expected_rows,
                                 int num_classes, std::string_view source) {
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  std::size_t blank_run = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view token = Trim(line);
    if (token.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0) {
      Fail(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                  ": blank line inside predictions");
    }
    int value = 0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
      Fail(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                  ": '" + std::string(token) + "' is not a class index");
    }
    if (value < 0 || value >= num_classes) {
      Fail(ErrorCode::kOutOfRange,
           std::string(source) + ":" + std::to_string(line_no) + ": class " +
               std::to_string(value) + " outside [0, " +
               std::to_string(num_classes) + ")");
    }
    labels.push_back(value);
  }
  if (labels.size() != expected_rows) {
    Fail(ErrorCode::kInvalidArgument,
         std::string(source) + " has " + std::to_string(labels.size()) +
             " predictions for " + std::to_string(expected_rows) + " rows");
  }
  return labels;
}

std::vector<int> LoadPredictions(const std::filesystem::path& path,
                                 std::size_t expected_rows, int num_classes) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return ReadPredictions(in, expected_rows, num_classes, path.string());
}

void WritePredictions(std::ostream& out, std::span<const int> labels) {
  for (int label : labels) out << label << '\n';
}

void WriteCsv(std::ostream& out, const Dataset& data, const std::vector<int>* labels) {
  const Schema& schema = data.schema();
  const bool with_labels = labels != nullptr && !schema.label_column.empty();
  for (std::size_t col = 0; col < schema.features.size(); ++col) {
    if (col > 0) out << ',';
    out << Quote(schema.features[col].name);
  }
  if (with_labels) out << ',' << Quote(schema.label_column);
  out << '\n';
  for (std::size_t row = 0; row < data.num_rows(); ++row) {
    for (std::size_t col = 0; col < data.num_features(); ++col) {
      if (col > 0) out << ',';
      if (data.kind(col) == FeatureKind::kQuantitative) {
        out << FormatDouble(data.value(row, col));
      } else {
        out << Quote(data.category(row, col));
      }
    }
    if (with_labels) {
      const int label = (*labels)[row];
      out << ',' << Quote(label < schema.num_classes() ? schema.class_names[label]
                                                      : std::to_string(label));
    }
    out << '\n';
  }
}

}  // namespace trust
