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
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"
#include "trust/error.h"
#include "trust/explainer.h"

namespace trust {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(Stage::kExplainer, code, message);
}

std::string Fixed(double v, int width = 12, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%*.*f", width, precision, v);
  return buf;
}

std::string Pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : std::string(width - s.size(), ' ') + s;
}

}  // namespace

ExplanationReport MakeReport(const TrustCore& core,
                             std::span<const Explanation> explanations,
                             std::span<const std::size_t> samples) {
  if (!samples.empty() && samples.size() != explanations.size()) {
    Fail(ErrorCode::kInvalidArgument, "sample ids do not match the explanations");
  }
  ExplanationReport report;
  report.class_names = core.schema.class_names;
  while (static_cast<int>(report.class_names.size()) < core.num_classes) {
    report.class_names.push_back(std::to_string(report.class_names.size()));
  }
  report.factors = core.reps.indices;
  report.weights = core.reps.normalized_weights;
  const int k = core.k();
  for (std::size_t j = 0; j < explanations.size(); ++j) {
    const Explanation& e = explanations[j];
    if (static_cast<int>(e.per_class.size()) != core.num_classes) {
      Fail(ErrorCode::kInvalidArgument, "explanation was not produced by this core");
    }
    ReportRow row;
    row.sample = samples.empty() ? j : samples[j];
    row.log_likelihood.resize(k, core.num_classes);
    for (int c = 0; c < core.num_classes; ++c) {
      if (static_cast<int>(e.per_class[c].per_rep.size()) != k) {
        Fail(ErrorCode::kInvalidArgument, "explanation was not produced by this core");
      }
      for (int i = 0; i < k; ++i) row.log_likelihood(i, c) = e.per_class[c].per_rep[i];
      row.totals.push_back(e.per_class[c].total);
    }
    for (int i = 0; i < k; ++i) {
      int best = 0;
      for (int c = 1; c < core.num_classes; ++c) {
        if (row.log_likelihood(i, c) > row.log_likelihood(i, best)) best = c;
      }
      row.winners.push_back(best);
      if (best != e.label) row.split = true;
    }
    row.label = e.label;
    row.margin = e.margin;
    row.unseen_category = e.unseen_category;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string ExplanationReport::ToText() const {
  std::ostringstream out;
  const std::size_t k = factors.size();
  const std::size_t classes = class_names.size();
  auto header = [&](const std::string& first) {
    out << Pad(first, 8);
    for (std::size_t i = 0; i < k; ++i) out << Pad("R" + std::to_string(i + 1), 12);
    out << '\n';
  };
  out << "representatives:";
  for (std::size_t i = 0; i < k; ++i) {
    out << " R" << (i + 1) << "=F" << factors[i] << " (w=" << Fixed(weights[i], 0, 4) << ")";
  }
  out << "\n\n";
  for (std::size_t c = 0; c < classes; ++c) {
    out << "log-likelihood, class " << class_names[c] << '\n';
    header("sample");
    for (const ReportRow& row : rows) {
      out << Pad(std::to_string(row.sample), 8);
      for (std::size_t i = 0; i < k; ++i) {
        out << Fixed(row.log_likelihood(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)));
      }
      out << '\n';
    }
    out << '\n';
  }
  out << "winning class per representative\n";
  header("sample");
  for (const ReportRow& row : rows) {
    out << Pad(std::to_string(row.sample), 8);
    for (int w : row.winners) out << Pad(class_names[w], 12);
    out << '\n';
  }
  out << '\n';
  out << "weighted totals and explained class\n";
  out << Pad("sample", 8);
  for (const std::string& name : class_names) out << Pad(name, 12);
  out << Pad("label", 12) << Pad("margin", 12) << "  notes\n";
  for (const ReportRow& row : rows) {
    out << Pad(std::to_string(row.sample), 8);
    for (double t : row.totals) out << Fixed(t);
    out << Pad(class_names[row.label], 12) << Fixed(row.margin);
    std::string notes;
    if (row.split) {
      std::size_t agree = 0;
      for (int w : row.winners) agree += w == row.label ? 1 : 0;
      notes = "split: " + std::to_string(agree) + " of " + std::to_string(k) +
              " representatives agree";
    }
    if (row.unseen_category) notes += std::string(notes.empty() ? "" : "; ") + "unseen category";
    if (!notes.empty()) out << "  " << notes;
    out << '\n';
  }
  return out.str();
}

std::string ExplanationReport::ToJson() const {
  json doc;
  doc["classes"] = class_names;
  doc["representatives"] = json::array();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    doc["representatives"].push_back({{"factor", factors[i]}, {"weight", weights[i]}});
  }
  doc["samples"] = json::array();
  for (const ReportRow& row : rows) {
    json ll = json::array();
    for (Eigen::Index c = 0; c < row.log_likelihood.cols(); ++c) {
      json col = json::array();
      for (Eigen::Index i = 0; i < row.log_likelihood.rows(); ++i) {
        col.push_back(row.log_likelihood(i, c));
      }
      ll.push_back(col);
    }
    doc["samples"].push_back({
        {"sample", row.sample},
        {"log_likelihood", ll},
        {"winners", row.winners},
        {"totals", row.totals},
        {"label", row.label},
        {"margin", row.margin},
        {"split", row.split},
        {"unseen_category", row.unseen_category},
    });
  }
  return doc.dump(2) + "\n";
}

CurveExport ExportCurves(const TrustCore& core, int rep, int points) {
  if (rep < 0 || rep >= core.k()) {
    Fail(ErrorCode::kOutOfRange, "representative " + std::to_string(rep) +
                                     " out of range [0, " + std::to_string(core.k()) + ")");
  }
  if (points < 2) Fail(ErrorCode::kInvalidArgument, "need at least 2 curve points");
  CurveExport out;
  out.rep_index = rep;
  out.factor = core.reps.indices[rep];
  out.lo = std::numeric_limits<double>::infinity();
  out.hi = -std::numeric_limits<double>::infinity();
  for (const MmgDensity& d : core.densities[rep]) {
    for (const GaussianComponent& g : d.components()) {
      out.lo = std::min(out.lo, g.mean - 8.0 * g.sigma);
      out.hi = std::max(out.hi, g.mean + 8.0 * g.sigma);
    }
  }
  const double step = (out.hi - out.lo) / (points - 1);
  for (int c = 0; c < core.num_classes; ++c) {
    const MmgDensity& d = core.densities[rep][c];
    Curve curve;
    curve.class_id = c;
    curve.components = d.components();
    curve.x.resize(static_cast<std::size_t>(points));
    curve.pdf.resize(static_cast<std::size_t>(points));
    for (int p = 0; p < points; ++p) {
      const double x = p + 1 == points ? out.hi : out.lo + p * step;
      curve.x[p] = x;
      curve.pdf[p] = d.Pdf(x);
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

std::string CurveExport::ToText() const {
  std::ostringstream out;
  out << "# representative " << rep_index << " factor " << factor << " range "
      << FormatDouble(lo) << ' ' << FormatDouble(hi) << '\n';
  for (const Curve& curve : curves) {
    out << "# class " << curve.class_id << " components " << curve.components.size() << '\n';
    for (const GaussianComponent& g : curve.components) {
      out << "#   weight " << FormatDouble(g.weight) << " mean " << FormatDouble(g.mean)
          << " sigma " << FormatDouble(g.sigma) << '\n';
    }
  }
  for (const Curve& curve : curves) {
    out << "\n# class " << curve.class_id << "\n";
    for (std::size_t p = 0; p < curve.x.size(); ++p) {
      out << FormatDouble(curve.x[p]) << ' ' << FormatDouble(curve.pdf[p]) << '\n';
    }
  }
  return out.str();
}

std::string CurveExport::ToJson() const {
  json doc = {{"representative", rep_index}, {"factor", factor}, {"lo", lo}, {"hi", hi}};
  doc["curves"] = json::array();
  for (const Curve& curve : curves) {
    json comps = json::array();
    for (const GaussianComponent& g : curve.components) {
      comps.push_back({{"weight", g.weight}, {"mean", g.mean}, {"sigma", g.sigma}});
    }
    doc["curves"].push_back(
        {{"class", curve.class_id}, {"components", comps}, {"x", curve.x}, {"pdf", curve.pdf}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace trust
