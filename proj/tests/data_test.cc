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
#include <clocale>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"
#include "trust/data.h"

namespace trust {
namespace {

using testing::CodeOf;

Schema DurProto() {
  return ParseSchemaJson(R"({"columns": [
      {"name": "dur", "kind": "quantitative"},
      {"name": "proto", "kind": "qualitative"},
      {"name": "label", "kind": "label"}],
    "label": {"classes": ["normal", "attack"]}})");
}

TEST(CsvTest, ParsesMixedColumns) {
  std::istringstream in("dur,proto,label\n1.5,tcp,normal\n2,udp,attack\n0.25,tcp,normal\n");
  std::vector<int> labels;
  const Dataset d = ReadCsv(in, DurProto(), &labels);
  EXPECT_EQ(d.num_rows(), 3u);
  EXPECT_EQ(d.num_features(), 2u);
  EXPECT_DOUBLE_EQ(d.value(2, 0), 0.25);
  EXPECT_EQ(d.category(1, 1), "udp");
  EXPECT_EQ(labels, (std::vector<int>{0, 1, 0}));
}

TEST(CsvTest, QuotedFieldsCrlfAndColumnOrder) {
  std::istringstream in("\xEF\xBB\xBFproto,label,dur\r\n\"t,cp\",attack,3\r\n\"u\"\"dp\",normal,4\r\n");
  std::vector<int> labels;
  const Dataset d = ReadCsv(in, DurProto(), &labels);
  ASSERT_EQ(d.num_rows(), 2u);
  EXPECT_EQ(d.category(0, 1), "t,cp");
  EXPECT_EQ(d.category(1, 1), "u\"dp");
  EXPECT_DOUBLE_EQ(d.value(1, 0), 4.0);
  EXPECT_EQ(labels, (std::vector<int>{1, 0}));
}

TEST(CsvTest, TextInQuantitativeColumnNamesTheCell) {
  std::istringstream in("dur,proto,label\n1,tcp,normal\nfast,tcp,normal\n");
  try {
    ReadCsv(in, DurProto(), nullptr, "flows.csv");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("fast"), std::string::npos);
    EXPECT_NE(msg.find("flows.csv:3"), std::string::npos);
    EXPECT_NE(msg.find("'dur'"), std::string::npos);
  }
}

TEST(CsvTest, ReportsMissingColumnEmptyFileAndMissingValue) {
  std::istringstream missing("dur,label\n1,normal\n");
  EXPECT_EQ(CodeOf([&] { ReadCsv(missing, DurProto()); }), ErrorCode::kMissingColumn);
  std::istringstream empty("");
  EXPECT_EQ(CodeOf([&] { ReadCsv(empty, DurProto()); }), ErrorCode::kEmptyInput);
  std::istringstream header_only("dur,proto,label\n");
  EXPECT_EQ(CodeOf([&] { ReadCsv(header_only, DurProto()); }), ErrorCode::kEmptyInput);
  std::istringstream hole("dur,proto,label\n1,,normal\n");
  try {
    ReadCsv(hole, DurProto(), nullptr, "x.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("x.csv:2 column 'proto'"), std::string::npos);
  }
  std::istringstream extra("dur,proto,label,rate\n1,tcp,normal,3\n");
  EXPECT_EQ(CodeOf([&] { ReadCsv(extra, DurProto()); }), ErrorCode::kSchemaMismatch);
  std::istringstream ragged("dur,proto,label\n1,tcp\n");
  EXPECT_EQ(CodeOf([&] { ReadCsv(ragged, DurProto()); }), ErrorCode::kParse);
}

TEST(CsvTest, HeaderlessFileWithIgnoredColumnAndFallbackLabel) {
  const Schema s = ParseSchemaJson(R"({"header": false, "columns": [
      {"name": "a", "kind": "quantitative"}, {"name": "skip", "kind": "ignore"},
      {"name": "svc", "kind": "qualitative"}, {"name": "cls", "kind": "label"}],
    "label": {"classes": ["normal", "attack"], "fallback": "attack"}})");
  std::istringstream in("1,0,http,normal\n2,0,ftp,neptune\n");
  std::vector<int> labels;
  const Dataset d = ReadCsv(in, s, &labels);
  EXPECT_EQ(d.num_features(), 2u);
  EXPECT_EQ(labels, (std::vector<int>{0, 1}));
}

TEST(CsvTest, ParsingIgnoresTheProcessLocale) {
  const std::string bytes = "dur,proto,label\n1.5,tcp,normal\n1e-3,udp,attack\n";
  std::istringstream a(bytes);
  const Dataset first = ReadCsv(a, DurProto());
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  std::istringstream b(bytes);
  const Dataset second = ReadCsv(b, DurProto());
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_EQ(first.value(0, 0), second.value(0, 0));
  EXPECT_EQ(first.value(1, 0), 1e-3);
  EXPECT_EQ(second.value(1, 0), 1e-3);
}

TEST(CsvTest, WriteThenReadRoundTrip) {
  Dataset d(DurProto());
  d.AddRow({0.1, std::string("tcp")});
  d.AddRow({1e300, std::string("a,b")});
  const std::vector<int> labels = {1, 0};
  std::ostringstream out;
  WriteCsv(out, d, &labels);
  std::istringstream in(out.str());
  std::vector<int> back_labels;
  const Dataset back = ReadCsv(in, DurProto(), &back_labels);
  EXPECT_EQ(back.value(0, 0), 0.1);
  EXPECT_EQ(back.value(1, 0), 1e300);
  EXPECT_EQ(back.category(1, 1), "a,b");
  EXPECT_EQ(back_labels, labels);
}

TEST(PredictionsTest, ValidatesRangeAndCount) {
  std::istringstream ok("0\n1\n1\n");
  EXPECT_EQ(ReadPredictions(ok, 3, 2), (std::vector<int>{0, 1, 1}));
  std::istringstream out_of_range("0\n2\n");
  EXPECT_EQ(CodeOf([&] { ReadPredictions(out_of_range, 2, 2); }), ErrorCode::kOutOfRange);
  std::istringstream short_file("0\n");
  EXPECT_EQ(CodeOf([&] { ReadPredictions(short_file, 2, 2); }), ErrorCode::kInvalidArgument);
  std::istringstream junk("0\nx\n");
  EXPECT_EQ(CodeOf([&] { ReadPredictions(junk, 2, 2); }), ErrorCode::kParse);
}

TEST(SchemaTest, RejectsDuplicatesAndRoundTripsJson) {
  EXPECT_EQ(CodeOf([] {
              ParseSchemaJson(R"({"columns": [{"name": "a", "kind": "quantitative"},
                                               {"name": "a", "kind": "qualitative"}]})");
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ParseSchemaJson(R"({"columns": [{"name": "y", "kind": "label"}]})"); }),
            ErrorCode::kInvalidArgument);
  const Schema s = DurProto();
  const Schema back = ParseSchemaJson(SchemaToJson(s));
  EXPECT_TRUE(back.SameFeatures(s));
  EXPECT_EQ(back.class_names, s.class_names);
  EXPECT_EQ(back.label_column, "label");
}

LabeledDataset Sequence(std::size_t n, std::vector<int> labels) {
  Dataset d(testing::QuantSchema(1));
  for (std::size_t i = 0; i < n; ++i) d.AddRow({static_cast<double>(i)});
  return MakeLabeled(std::move(d), std::move(labels), 2);
}

TEST(PartitionTest, SplitsByLabelPreservingOrder) {
  const ClassPartition p = PartitionByLabel(Sequence(3, {0, 1, 0}));
  EXPECT_EQ(p.sizes(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(p.parts[0].value(1, 0), 2.0);
  EXPECT_EQ(p.rows[1], (std::vector<std::size_t>{1}));
}

TEST(PartitionTest, EmptyClassIsAnError) {
  EXPECT_EQ(CodeOf([] { PartitionByLabel(Sequence(3, {0, 0, 0})); }), ErrorCode::kEmptyClass);
}

TEST(PartitionTest, IdsScalePredictedColumnSums) {
  std::vector<int> labels(54193 + 46585, 1);
  std::fill(labels.begin(), labels.begin() + 54193, 0);
  std::mt19937_64 rng(3);
  std::shuffle(labels.begin(), labels.end(), rng);
  const std::size_t n = labels.size();
  const ClassPartition p = PartitionByLabel(Sequence(n, std::move(labels)));
  EXPECT_EQ(p.sizes(), (std::vector<std::size_t>{54193, 46585}));
}

TEST(PartitionTest, ConcatenationIsAPermutation) {
  std::mt19937_64 rng(11);
  std::vector<int> labels(200);
  for (int& y : labels) y = static_cast<int>(rng() % 2);
  const ClassPartition p = PartitionByLabel(Sequence(200, labels));
  std::vector<double> values;
  for (const Dataset& part : p.parts) {
    for (std::size_t r = 0; r < part.num_rows(); ++r) values.push_back(part.value(r, 0));
  }
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) EXPECT_EQ(values[i], static_cast<double>(i));
}

TEST(SplitTest, SizesAndDeterminism) {
  const LabeledDataset ld = Sequence(10, {0, 1, 0, 1, 0, 1, 0, 1, 0, 0});
  const auto [train, test] = TrainTestSplit(ld, 0.8, 7);
  EXPECT_EQ(train.data.num_rows(), 8u);
  EXPECT_EQ(test.data.num_rows(), 2u);
  const auto [train2, test2] = TrainTestSplit(ld, 0.8, 7);
  EXPECT_EQ(train.labels, train2.labels);
  for (std::size_t r = 0; r < 8; ++r) EXPECT_EQ(train.data.value(r, 0), train2.data.value(r, 0));
  EXPECT_EQ(CodeOf([&] { TrainTestSplit(ld, 1.0, 7); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { TrainTestSplit(ld, 0.0, 7); }), ErrorCode::kInvalidArgument);
}

TEST(SplitTest, IdsTrainingSizeAndStratification) {
  const std::size_t n = 125973;
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i % 100 < 47 ? 1 : 0;
  const LabeledDataset ld = Sequence(n, labels);
  const auto [train, test] = TrainTestSplit(ld, 0.8, 1);
  EXPECT_EQ(train.data.num_rows(), 100778u);
  EXPECT_EQ(test.data.num_rows(), 25195u);
  const auto ones = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const auto train_ones = static_cast<double>(std::count(train.labels.begin(), train.labels.end(), 1));
  EXPECT_LE(std::abs(train_ones - std::floor(0.8 * static_cast<double>(n)) * ones / static_cast<double>(n)), 1.0);
}

TEST(SplitTest, StratifiedWithinOneRowPerClass) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 50 + rng() % 500;
    std::vector<int> labels(n);
    for (int& y : labels) y = rng() % 5 == 0 ? 1 : 0;
    labels[0] = 0;
    labels[1] = 1;
    const double ratio = 0.1 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto [train, test] = TrainTestSplit(Sequence(n, labels), ratio, seed);
    const auto total = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
    ASSERT_EQ(train.data.num_rows(), total);
    for (int c = 0; c < 2; ++c) {
      const auto nc = static_cast<double>(std::count(labels.begin(), labels.end(), c));
      const auto got = static_cast<double>(std::count(train.labels.begin(), train.labels.end(), c));
      EXPECT_LE(std::abs(got - static_cast<double>(total) * nc / static_cast<double>(n)), 1.0);
    }
  }
}

}  // namespace
}  // namespace trust
