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

#include "trust/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trust/error.h"

namespace trust {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kData, code, message);
}

FeatureKind ParseKind(const std::string& text) {
  if (text == "quantitative") return FeatureKind::kQuantitative;
  if (text == "qualitative") return FeatureKind::kQualitative;
  Fail(ErrorCode::kParse, "unknown column kind '" + text + "'");
}

}  // namespace

std::string_view FeatureKindName(FeatureKind kind) {
  return kind == FeatureKind::kQuantitative ? "quantitative" : "qualitative";
}

int Schema::FeatureIndex(std::string_view name) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::optional<int> Schema::ClassOf(std::string_view token) const {
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    if (class_names[c] == token) return static_cast<int>(c);
  }
  if (!fallback_class.empty()) {
    for (std::size_t c = 0; c < class_names.size(); ++c) {
      if (class_names[c] == fallback_class) return static_cast<int>(c);
    }
  }
  return std::nullopt;
}

bool Schema::SameFeatures(const Schema& other) const {
  return features == other.features;
}

void Schema::Validate() const {
  if (features.empty()) {
    Fail(ErrorCode::kInvalidArgument, "schema declares no feature columns");
  }
  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (name.empty()) Fail(ErrorCode::kInvalidArgument, "empty column name");
    if (!seen.insert(name).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate column name '" + name + "'");
    }
  };
  for (const Column& column : features) claim(column.name);
  if (!label_column.empty()) claim(label_column);
  for (const std::string& name : ignored_columns) claim(name);
  std::set<std::string> classes(class_names.begin(), class_names.end());
  if (classes.size() != class_names.size()) {
    Fail(ErrorCode::kInvalidArgument, "duplicate class name");
  }
  if (!fallback_class.empty() && !classes.contains(fallback_class)) {
    Fail(ErrorCode::kInvalidArgument,
         "fallback class '" + fallback_class + "' is not a declared class");
  }
  if (!has_header) {
    if (file_columns.size() != seen.size()) {
      Fail(ErrorCode::kInvalidArgument,
           "headerless schema must list every file column in order");
    }
    for (const std::string& name : file_columns) {
      if (!seen.contains(name)) {
        Fail(ErrorCode::kInvalidArgument,
             "file column '" + name + "' has no declared role");
      }
    }
  }
}

Schema ParseSchemaJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("schema is not valid JSON: ") + e.what());
  }
  Schema schema;
  try {
    for (const json& entry : doc.at("columns")) {
      const std::string name = entry.at("name").get<std::string>();
      const std::string kind = entry.at("kind").get<std::string>();
      schema.file_columns.push_back(name);
      if (kind == "label") {
        schema.label_column = name;
      } else if (kind == "ignore") {
        schema.ignored_columns.push_back(name);
      } else {
        schema.features.push_back({name, ParseKind(kind)});
      }
    }
    if (doc.contains("label")) {
      const json& label = doc.at("label");
      if (label.contains("column")) {
        schema.label_column = label.at("column").get<std::string>();
      }
      schema.class_names =
          label.at("classes").get<std::vector<std::string>>();
      schema.fallback_class = label.value("fallback", std::string());
    }
    schema.has_header = doc.value("header", true);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed schema: ") + e.what());
  }
  schema.Validate();
  return schema;
}

Schema LoadSchema(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open schema file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSchemaJson(buffer.str());
}

std::string SchemaToJson(const Schema& schema) {
  json columns = json::array();
  std::vector<std::string> order = schema.file_columns;
  if (order.empty()) {
    for (const Column& c : schema.features) order.push_back(c.name);
    if (!schema.label_column.empty()) order.push_back(schema.label_column);
    for (const std::string& name : schema.ignored_columns) order.push_back(name);
  }
  for (const std::string& name : order) {
    std::string kind;
    if (name == schema.label_column) {
      kind = "label";
    } else if (const int index = schema.FeatureIndex(name); index >= 0) {
      kind = FeatureKindName(schema.features[index].kind);
    } else {
      kind = "ignore";
    }
    columns.push_back({{"name", name}, {"kind", kind}});
  }
  json doc = {{"columns", columns}, {"header", schema.has_header}};
  if (!schema.class_names.empty()) {
    json label = {{"classes", schema.class_names}};
    if (!schema.label_column.empty()) label["column"] = schema.label_column;
    if (!schema.fallback_class.empty()) label["fallback"] = schema.fallback_class;
    doc["label"] = label;
  }
  return doc.dump(2);
}

Dataset::Dataset(Schema schema) : schema_(std::move(schema)) {
  columns_.resize(schema_.features.size());
}

Cell Dataset::cell(std::size_t row, std::size_t col) const {
  if (kind(col) == FeatureKind::kQuantitative) return value(row, col);
  return category(row, col);
}

void Dataset::Reserve(std::size_t rows) {
  for (std::size_t col = 0; col < columns_.size(); ++col) {
    if (kind(col) == FeatureKind::kQuantitative) {
      columns_[col].values.reserve(rows);
    } else {
      columns_[col].codes.reserve(rows);
    }
  }
}

std::int32_t Dataset::Intern(ColumnData& column, std::string_view token) {
  const auto it = column.lookup.find(std::string(token));
  if (it != column.lookup.end()) return it->second;
  const auto code = static_cast<std::int32_t>(column.dictionary.size());
  column.dictionary.emplace_back(token);
  column.lookup.emplace(std::string(token), code);
  return code;
}

void Dataset::AppendQuantitative(std::size_t col, double value) {
  if (!std::isfinite(value)) {
    Fail(ErrorCode::kInvalidArgument,
         "non-finite value in column '" + schema_.features[col].name + "'");
  }
  columns_[col].values.push_back(value);
}

void Dataset::AppendCategory(std::size_t col, std::string_view token) {
  ColumnData& column = columns_[col];
  column.codes.push_back(Intern(column, token));
}

void Dataset::CommitRow() { ++num_rows_; }

void Dataset::AddRow(std::span<const Cell> row) {
  if (row.size() != columns_.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "row has " + std::to_string(row.size()) + " cells, expected " +
             std::to_string(columns_.size()));
  }
  for (std::size_t col = 0; col < row.size(); ++col) {
    const bool is_number = std::holds_alternative<double>(row[col]);
    if (is_number != (kind(col) == FeatureKind::kQuantitative)) {
      Fail(ErrorCode::kInvalidArgument,
           "cell kind mismatch in column '" + schema_.features[col].name + "'");
    }
    if (is_number && !std::isfinite(std::get<double>(row[col]))) {
      Fail(ErrorCode::kInvalidArgument,
           "non-finite value in column '" + schema_.features[col].name + "'");
    }
  }
  for (std::size_t col = 0; col < row.size(); ++col) {
    if (kind(col) == FeatureKind::kQuantitative) {
      columns_[col].values.push_back(std::get<double>(row[col]));
    } else {
      AppendCategory(col, std::get<std::string>(row[col]));
    }
  }
  CommitRow();
}

Dataset Dataset::Select(std::span<const std::size_t> rows) const {
  Dataset out;
  out.schema_ = schema_;
  out.columns_.resize(columns_.size());
  for (std::size_t col = 0; col < columns_.size(); ++col) {
    const ColumnData& src = columns_[col];
    ColumnData& dst = out.columns_[col];
    dst.dictionary = src.dictionary;
    dst.lookup = src.lookup;
    if (kind(col) == FeatureKind::kQuantitative) {
      dst.values.reserve(rows.size());
      for (std::size_t r : rows) dst.values.push_back(src.values[r]);
    } else {
      dst.codes.reserve(rows.size());
      for (std::size_t r : rows) dst.codes.push_back(src.codes[r]);
    }
  }
  out.num_rows_ = rows.size();
  return out;
}

void LabeledDataset::Validate() const {
  if (labels.size() != data.num_rows()) {
    Fail(ErrorCode::kInvalidArgument,
         "label count " + std::to_string(labels.size()) +
             " does not match row count " + std::to_string(data.num_rows()));
  }
  if (num_classes < 2) {
    Fail(ErrorCode::kInvalidArgument, "at least two classes are required");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      Fail(ErrorCode::kOutOfRange, "label " + std::to_string(labels[i]) +
                                       " at row " + std::to_string(i + 1) +
                                       " outside [0, " +
                                       std::to_string(num_classes) + ")");
    }
  }
}

LabeledDataset MakeLabeled(Dataset data, std::vector<int> labels,
                           int num_classes) {
  LabeledDataset out{std::move(data), std::move(labels), num_classes};
  out.Validate();
  return out;
}

std::vector<std::size_t> ClassPartition::sizes() const {
  std::vector<std::size_t> out;
  for (const Dataset& part : parts) out.push_back(part.num_rows());
  return out;
}

ClassPartition PartitionByLabel(const LabeledDataset& labeled) {
  labeled.Validate();
  ClassPartition partition;
  partition.rows.resize(labeled.num_classes);
  for (std::size_t i = 0; i < labeled.labels.size(); ++i) {
    partition.rows[labeled.labels[i]].push_back(i);
  }
  for (int c = 0; c < labeled.num_classes; ++c) {
    if (partition.rows[c].empty()) {
      Fail(ErrorCode::kEmptyClass,
           "class " + std::to_string(c) + " has no rows");
    }
    partition.parts.push_back(labeled.data.Select(partition.rows[c]));
  }
  return partition;
}

std::pair<LabeledDataset, LabeledDataset> TrainTestSplit(
    const LabeledDataset& labeled, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    Fail(ErrorCode::kInvalidArgument,
         "split ratio must lie in (0, 1), got " + FormatDouble(ratio));
  }
  labeled.Validate();
  const std::size_t n = labeled.labels.size();
  const auto train_total = static_cast<std::size_t>(std::floor(ratio * n));

  std::vector<std::vector<std::size_t>> by_class(labeled.num_classes);
  for (std::size_t i = 0; i < n; ++i) by_class[labeled.labels[i]].push_back(i);

  // Floor of each proportional share, then hand the remainder to the classes
  // with the largest fractional parts.
  std::vector<std::size_t> quota(labeled.num_classes);
  std::vector<std::pair<double, int>> remainders;
  std::size_t assigned = 0;
  for (int c = 0; c < labeled.num_classes; ++c) {
    const double share = ratio * static_cast<double>(by_class[c].size());
    quota[c] = static_cast<std::size_t>(std::floor(share));
    assigned += quota[c];
    remainders.emplace_back(share - std::floor(share), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t j = 0; assigned < train_total && j < remainders.size(); ++j) {
    const int c = remainders[j].second;
    if (quota[c] < by_class[c].size()) {
      ++quota[c];
      ++assigned;
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<char> in_train(n, 0);
  for (int c = 0; c < labeled.num_classes; ++c) {
    std::vector<std::size_t>& rows = by_class[c];
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t j = 0; j < quota[c]; ++j) in_train[rows[j]] = 1;
  }
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? train_rows : test_rows).push_back(i);
  }
  auto take = [&](const std::vector<std::size_t>& rows) {
    std::vector<int> labels;
    labels.reserve(rows.size());
    for (std::size_t r : rows) labels.push_back(labeled.labels[r]);
    return LabeledDataset{labeled.data.Select(rows), std::move(labels),
                          labeled.num_classes};
  };
  return {take(train_rows), take(test_rows)};
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace trust
