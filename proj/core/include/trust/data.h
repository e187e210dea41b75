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

// Mixed quantitative/qualitative tables keyed by predicted class labels.

#ifndef TRUST_DATA_H_
#define TRUST_DATA_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace trust {

enum class FeatureKind { kQuantitative, kQualitative };

std::string_view FeatureKindName(FeatureKind kind);

struct Column {
  std::string name;
  FeatureKind kind = FeatureKind::kQuantitative;

  bool operator==(const Column&) const = default;
};

// Column layout of a table plus the mapping from label tokens to class ids.
//
// Class ids are zero-based: class_names[c] names class c. Label tokens that
// match no class name map to `fallback_class` when it is set (e.g. every
// attack family in an IDS log maps to "attack").
struct Schema {
  std::vector<Column> features;
  std::string label_column;
  std::vector<std::string> class_names;
  std::string fallback_class;
  std::vector<std::string> ignored_columns;
  // File column order; only consulted when has_header is false.
  std::vector<std::string> file_columns;
  bool has_header = true;

  std::size_t num_features() const { return features.size(); }
  int num_classes() const { return static_cast<int>(class_names.size()); }
  // -1 when absent.
  int FeatureIndex(std::string_view name) const;
  // Returns the class id of a label token, or nullopt.
  std::optional<int> ClassOf(std::string_view token) const;
  // Same feature names, order and kinds.
  bool SameFeatures(const Schema& other) const;
  // Throws Error(kData, kInvalidArgument) on duplicate or empty names, K == 0.
  void Validate() const;
};

Schema ParseSchemaJson(std::string_view text);
Schema LoadSchema(const std::filesystem::path& path);
std::string SchemaToJson(const Schema& schema);

using Cell = std::variant<double, std::string>;

// Column-major N x K table. Qualitative cells are interned per column.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Schema schema);

  const Schema& schema() const { return schema_; }
  std::size_t num_rows() const { return num_rows_; }
  std::size_t num_features() const { return columns_.size(); }
  bool empty() const { return num_rows_ == 0; }
  FeatureKind kind(std::size_t col) const { return schema_.features[col].kind; }

  // Valid for quantitative columns only.
  std::span<const double> quantitative(std::size_t col) const {
    return columns_[col].values;
  }
  // Valid for qualitative columns only; indices into categories(col).
  std::span<const std::int32_t> codes(std::size_t col) const {
    return columns_[col].codes;
  }
  const std::vector<std::string>& categories(std::size_t col) const {
    return columns_[col].dictionary;
  }

  double value(std::size_t row, std::size_t col) const {
    return columns_[col].values[row];
  }
  const std::string& category(std::size_t row, std::size_t col) const {
    return columns_[col].dictionary[columns_[col].codes[row]];
  }
  Cell cell(std::size_t row, std::size_t col) const;

  void Reserve(std::size_t rows);
  // Throws Error(kData, kInvalidArgument) on arity or kind mismatch and on
  // non-finite quantitative values.
  void AddRow(std::span<const Cell> row);
  void AddRow(std::initializer_list<Cell> row) {
    AddRow(std::span<const Cell>(row.begin(), row.size()));
  }
  // Low-level append used by the CSV reader; one call per column per row,
  // followed by CommitRow().
  void AppendQuantitative(std::size_t col, double value);
  void AppendCategory(std::size_t col, std::string_view token);
  void CommitRow();

  // Rows in the given order; dictionaries are shared with this dataset.
  Dataset Select(std::span<const std::size_t> rows) const;

 private:
  struct ColumnData {
    std::vector<double> values;
    std::vector<std::int32_t> codes;
    std::vector<std::string> dictionary;
    std::unordered_map<std::string, std::int32_t> lookup;
  };

  std::int32_t Intern(ColumnData& column, std::string_view token);

  Schema schema_;
  std::vector<ColumnData> columns_;
  std::size_t num_rows_ = 0;
};

// A dataset with one zero-based class id per row. The ids are whatever the
// black-box classifier predicted; ground truth plays no role in explaining.
struct LabeledDataset {
  Dataset data;
  std::vector<int> labels;
  int num_classes = 0;

  // Throws Error(kData, kInvalidArgument) unless labels.size() == N,
  // num_classes >= 2 and every label is in [0, num_classes).
  void Validate() const;
};

LabeledDataset MakeLabeled(Dataset data, std::vector<int> labels,
                           int num_classes);

struct ClassPartition {
  // parts[c] holds the rows labeled c in their original relative order.
  std::vector<Dataset> parts;
  // rows[c][j] is the source row of parts[c] row j.
  std::vector<std::vector<std::size_t>> rows;

  std::vector<std::size_t> sizes() const;
};

// Throws Error(kData, kEmptyClass) if some class has no rows.
ClassPartition PartitionByLabel(const LabeledDataset& labeled);

// Stratified split: train gets floor(ratio * N) rows, each class within one
// row of its proportional share. Rows keep their original relative order.
std::pair<LabeledDataset, LabeledDataset> TrainTestSplit(
    const LabeledDataset& labeled, double ratio, std::uint64_t seed);

// RFC-4180 CSV. Missing cells are rejected. Errors name row and column.
Dataset ReadCsv(std::istream& in, const Schema& schema,
                std::vector<int>* labels = nullptr,
                std::string_view source = "<stream>");
Dataset LoadCsv(const std::filesystem::path& path, const Schema& schema);
// Labels come from the schema's label column.
LabeledDataset LoadLabeledCsv(const std::filesystem::path& path,
                              const Schema& schema);

// One integer class id per line, aligned with data rows.
std::vector<int> ReadPredictions(std::istream& in, std::size_t expected_rows,
                                 int num_classes,
                                 std::string_view source = "<stream>");
std::vector<int> LoadPredictions(const std::filesystem::path& path,
                                 std::size_t expected_rows, int num_classes);
void WritePredictions(std::ostream& out, std::span<const int> labels);

// Writes a header row; appends the label column (as class names) when labels
// are given and the schema names one.
void WriteCsv(std::ostream& out, const Dataset& data,
              const std::vector<int>* labels = nullptr);

// Shortest round-trip decimal representation.
std::string FormatDouble(double value);

}  // namespace trust

#endif  // TRUST_DATA_H_
