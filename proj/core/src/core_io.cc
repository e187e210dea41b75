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
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <type_traits>

#include <zlib.h>

#include "trust/error.h"
#include "trust/explainer.h"

namespace trust {
namespace {

constexpr char kMagic[8] = {'T', 'R', 'U', 'S', 'T', 'C', 'O', 'R'};
constexpr std::size_t kHeaderSize = sizeof(kMagic) + 4 + 8;

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kPersistence, code, message);
}

template <typename T>
T ToLittle(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return v;
  }
}

class Writer {
 public:
  template <typename T>
  void Put(T v) {
    static_assert(std::is_arithmetic_v<T>);
    v = ToLittle(v);
    char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    out_.append(bytes, sizeof(T));
  }
  void PutBool(bool b) { Put<std::uint8_t>(b ? 1 : 0); }
  void PutSize(std::size_t n) { Put<std::uint64_t>(n); }
  void PutString(std::string_view s) {
    PutSize(s.size());
    out_.append(s);
  }
  void PutDoubles(std::span<const double> v) {
    PutSize(v.size());
    for (double d : v) Put(d);
  }
  void PutInts(std::span<const int> v) {
    PutSize(v.size());
    for (int i : v) Put<std::int32_t>(i);
  }
  void PutMatrix(const Eigen::MatrixXd& m) {
    PutSize(static_cast<std::size_t>(m.rows()));
    PutSize(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) Put(m(i, j));
    }
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : in_(bytes) {}

  template <typename T>
  T Get() {
    static_assert(std::is_arithmetic_v<T>);
    Need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return ToLittle(v);
  }
  bool GetBool() { return Get<std::uint8_t>() != 0; }
  std::size_t GetSize() {
    const auto n = Get<std::uint64_t>();
    if (n > in_.size()) Fail(ErrorCode::kCorrupted, "implausible length in core payload");
    return static_cast<std::size_t>(n);
  }
  std::string GetString() {
    const std::size_t n = GetSize();
    Need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::vector<double> GetDoubles() {
    std::vector<double> v(GetSize());
    for (double& d : v) d = Get<double>();
    return v;
  }
  std::vector<int> GetInts() {
    std::vector<int> v(GetSize());
    for (int& i : v) i = Get<std::int32_t>();
    return v;
  }
  Eigen::MatrixXd GetMatrix() {
    const std::size_t rows = GetSize();
    const std::size_t cols = GetSize();
    Need(rows * cols * sizeof(double));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = Get<double>();
    }
    return m;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void Need(std::size_t n) const {
    if (n > in_.size() - pos_) Fail(ErrorCode::kCorrupted, "truncated core payload");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void PutZone(Writer& w, const SearchZone& zone) {
  w.PutInts(zone.lo);
  w.PutInts(zone.hi);
  w.Put<std::int32_t>(zone.subzone_edge);
}

SearchZone GetZone(Reader& r) {
  SearchZone zone;
  zone.lo = r.GetInts();
  zone.hi = r.GetInts();
  zone.subzone_edge = r.Get<std::int32_t>();
  return zone;
}

void PutModel(Writer& w, const FactorModel& model) {
  w.Put<std::int32_t>(model.class_id);
  w.PutSize(model.columns.size());
  for (std::size_t j = 0; j < model.columns.size(); ++j) {
    const Column& col = model.columns[j];
    const ColumnStats& st = model.stats[j];
    w.PutString(col.name);
    w.Put<std::uint8_t>(col.kind == FeatureKind::kQuantitative ? 0 : 1);
    w.Put<std::uint8_t>(st.kind == FeatureKind::kQuantitative ? 0 : 1);
    w.Put(st.mean);
    w.Put(st.stddev);
    w.PutSize(st.categories.size());
    for (const std::string& cat : st.categories) w.PutString(cat);
    w.PutDoubles(st.proportions);
    w.PutDoubles(st.scores);
    w.PutBool(st.constant);
  }
  w.PutDoubles(std::span<const double>(model.center.data(), model.center.size()));
  w.PutMatrix(model.loadings);
  w.PutDoubles(std::span<const double>(model.eigenvalues.data(), model.eigenvalues.size()));
}

FeatureKind GetKind(Reader& r) {
  const auto k = r.Get<std::uint8_t>();
  if (k > 1) Fail(ErrorCode::kCorrupted, "unknown feature kind in core payload");
  return k == 0 ? FeatureKind::kQuantitative : FeatureKind::kQualitative;
}

FactorModel GetModel(Reader& r) {
  FactorModel model;
  model.class_id = r.Get<std::int32_t>();
  const std::size_t columns = r.GetSize();
  for (std::size_t j = 0; j < columns; ++j) {
    Column col;
    col.name = r.GetString();
    col.kind = GetKind(r);
    ColumnStats st;
    st.kind = GetKind(r);
    st.mean = r.Get<double>();
    st.stddev = r.Get<double>();
    st.categories.resize(r.GetSize());
    for (std::string& cat : st.categories) cat = r.GetString();
    st.proportions = r.GetDoubles();
    st.scores = r.GetDoubles();
    st.constant = r.GetBool();
    model.columns.push_back(std::move(col));
    model.stats.push_back(std::move(st));
  }
  const std::vector<double> center = r.GetDoubles();
  model.center = Eigen::Map<const Eigen::VectorXd>(center.data(),
                                                   static_cast<Eigen::Index>(center.size()));
  model.loadings = r.GetMatrix();
  const std::vector<double> eig = r.GetDoubles();
  model.eigenvalues = Eigen::Map<const Eigen::VectorXd>(eig.data(),
                                                        static_cast<Eigen::Index>(eig.size()));
  return model;
}

std::uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + pos), chunk);
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string SerializeCore(const TrustCore& core) {
  core.Validate();
  Writer payload;
  payload.PutString(SchemaToJson(core.schema));
  payload.Put<std::int32_t>(core.num_classes);

  const BuildMetadata& meta = core.metadata;
  payload.Put<std::uint64_t>(meta.seed);
  payload.Put<std::int32_t>(meta.bins);
  PutZone(payload, meta.zone);
  payload.PutBool(meta.fast_search);
  payload.PutString(meta.created_utc);
  payload.Put(meta.build_seconds);

  payload.PutSize(core.models.size());
  for (const FactorModel& model : core.models) PutModel(payload, model);

  payload.PutInts(core.reps.indices);
  payload.PutDoubles(core.reps.raw_weights);
  payload.PutDoubles(core.reps.normalized_weights);

  for (std::size_t i = 0; i < core.densities.size(); ++i) {
    for (const MmgDensity& d : core.densities[i]) {
      payload.PutSize(d.num_modes());
      for (const GaussianComponent& g : d.components()) {
        payload.Put(g.weight);
        payload.Put(g.mean);
        payload.Put(g.sigma);
        payload.Put(g.alpha);
      }
    }
    const ModeAssignment& m = core.modes[i];
    payload.PutInts(m.modes);
    payload.Put(m.score);
    payload.PutSize(m.evaluations);
    payload.PutBool(m.insufficient_data);
  }

  Writer out;
  out.bytes().append(kMagic, sizeof(kMagic));
  out.Put<std::uint32_t>(kCoreFormatVersion);
  out.PutSize(payload.bytes().size());
  out.bytes().append(payload.bytes());
  out.Put<std::uint32_t>(Crc32(payload.bytes()));
  return std::move(out.bytes());
}

TrustCore DeserializeCore(std::string_view bytes, const Schema* expected) {
  if (bytes.size() < kHeaderSize + 4 ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    Fail(ErrorCode::kCorrupted, "not a core file");
  }
  Reader header(bytes.substr(sizeof(kMagic), 12));
  const auto version = header.Get<std::uint32_t>();
  if (version != kCoreFormatVersion) {
    Fail(ErrorCode::kVersionMismatch,
         "core format version " + std::to_string(version) + " is not supported (expected " +
             std::to_string(kCoreFormatVersion) + ")");
  }
  const auto size = header.Get<std::uint64_t>();
  if (size != bytes.size() - kHeaderSize - 4) {
    Fail(ErrorCode::kCorrupted, "core payload size does not match the file size");
  }
  const std::string_view body = bytes.substr(kHeaderSize, static_cast<std::size_t>(size));
  Reader trailer(bytes.substr(kHeaderSize + body.size()));
  if (trailer.Get<std::uint32_t>() != Crc32(body)) {
    Fail(ErrorCode::kCorrupted, "core checksum mismatch");
  }

  Reader r(body);
  TrustCore core;
  try {
    core.schema = ParseSchemaJson(r.GetString());
  } catch (const Error& e) {
    Fail(ErrorCode::kCorrupted, std::string("embedded schema unreadable: ") + e.what());
  }
  if (expected != nullptr && !expected->SameFeatures(core.schema)) {
    Fail(ErrorCode::kSchemaMismatch, "core was built for a different feature schema");
  }
  core.num_classes = r.Get<std::int32_t>();
  core.metadata.format_version = version;
  core.metadata.seed = r.Get<std::uint64_t>();
  core.metadata.bins = r.Get<std::int32_t>();
  core.metadata.zone = GetZone(r);
  core.metadata.fast_search = r.GetBool();
  core.metadata.created_utc = r.GetString();
  core.metadata.build_seconds = r.Get<double>();

  const std::size_t models = r.GetSize();
  for (std::size_t c = 0; c < models; ++c) core.models.push_back(GetModel(r));

  core.reps.indices = r.GetInts();
  core.reps.raw_weights = r.GetDoubles();
  core.reps.normalized_weights = r.GetDoubles();

  for (std::size_t i = 0; i < core.reps.indices.size(); ++i) {
    std::vector<MmgDensity> row;
    for (int c = 0; c < core.num_classes; ++c) {
      std::vector<GaussianComponent> comps(r.GetSize());
      for (GaussianComponent& g : comps) {
        g.weight = r.Get<double>();
        g.mean = r.Get<double>();
        g.sigma = r.Get<double>();
        g.alpha = r.Get<double>();
      }
      if (comps.empty()) Fail(ErrorCode::kCorrupted, "density without components");
      row.emplace_back(std::move(comps), static_cast<int>(i), c);
    }
    core.densities.push_back(std::move(row));
    ModeAssignment m;
    m.modes = r.GetInts();
    m.score = r.Get<double>();
    m.evaluations = r.GetSize();
    m.insufficient_data = r.GetBool();
    core.modes.push_back(std::move(m));
  }
  if (!r.done()) Fail(ErrorCode::kCorrupted, "trailing bytes in core payload");
  try {
    core.Validate();
  } catch (const Error& e) {
    Fail(ErrorCode::kCorrupted, e.what());
  }
  return core;
}

void SaveCore(const TrustCore& core, const std::filesystem::path& path) {
  const std::string bytes = SerializeCore(core);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

TrustCore LoadCore(const std::filesystem::path& path, const Schema* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return DeserializeCore(bytes, expected);
}

}  // namespace trust
