// Copyright 2026 The mrcmip Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrcmip/report.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace mrcmip {
namespace {

using Json = nlohmann::ordered_json;

// Shortest text that parses back to the same double.
std::string Num(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string UtcNow() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Commas and quotes would break the row.
std::string CsvText(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

Json DatasetJson(const Dataset& d) {
  Json j;
  j["n"] = d.n();
  j["k"] = d.k();
  j["normalized_column"] = d.normalized_index() + 1;
  j["normalized_sign"] = d.normalized_sign();
  j["fingerprint"] = absl::StrFormat("%016x", Fingerprint(d));
  return j;
}

Json MipJson(const MipSolution& mip, bool deterministic) {
  Json j;
  j["status"] = MipStatusName(mip.status);
  j["numerator"] = mip.numerator;
  j["denominator"] = mip.denom;
  j["dual_bound"] = mip.dual_bound;
  j["gap_percent"] = mip.gap;
  // Node counts repeat only when the search was not cut short by the clock.
  if (!deterministic || mip.status == MipStatus::kOptimal) {
    j["nodes"] = mip.nodes;
    j["lp_solves"] = mip.lp_solves;
  }
  return j;
}

Json MethodJson(const MethodResult& result, bool deterministic) {
  Json j;
  j["method"] = MethodName(result.method);
  j["objective"] = result.solution.objective;
  j["concordant"] = result.concordant;
  j["denominator"] = result.denom;
  if (!deterministic) j["elapsed_seconds"] = result.solution.elapsed;
  j["beta"] = result.solution.beta;
  if (result.method != Method::kMip) {
    j["evaluations"] = result.solution.evaluations;
    j["ols_fallback"] = result.ols_fallback;
  }
  if (!result.chain_mean.empty()) j["chain_mean"] = result.chain_mean;
  if (result.mip) j["mip"] = MipJson(*result.mip, deterministic);
  return j;
}

Json SubsetJson(const SubsetSolution& fit, bool deterministic) {
  Json j;
  j["beta"] = fit.beta;
  j["support"] = fit.support;
  j["score"] = fit.score.value();
  j["agreeing_pairs"] = fit.score.concordant;
  j["pairs"] = fit.score.denom;
  if (!deterministic) j["elapsed_seconds"] = fit.mip.solution.elapsed;
  j["mip"] = MipJson(fit.mip, deterministic);
  return j;
}

Json UnJson(const UnEstimate& estimate) {
  Json j;
  j["u_n"] = estimate.u_n;
  j["fitted_score"] = estimate.fitted_score.value();
  j["best_score"] = estimate.best_score.value();
  j["best_method"] = estimate.best_method;
  j["best_beta"] = estimate.best_beta;
  return j;
}

Json MonteCarloJson(const MonteCarloResult& result, bool deterministic) {
  Json j;
  j["has_reference"] = result.has_reference;
  Json summary = Json::array();
  for (const MethodSummary& s : result.summary) {
    Json m;
    m["method"] = MethodName(s.method);
    m["loss"] = s.loss;
    m["tie"] = s.tie;
    m["win"] = s.win;
    m["failures"] = s.failures;
    if (!deterministic) {
      m["max_time"] = s.max_time;
      m["median_time"] = s.median_time;
    }
    if (s.method == Method::kMip) {
      m["max_gap"] = s.max_gap;
      m["median_gap"] = s.median_gap;
    }
    summary.push_back(std::move(m));
  }
  j["summary"] = std::move(summary);
  Json rows = Json::array();
  for (const ComparisonRow& row : result.rows) {
    Json r;
    r["replication"] = row.replication;
    r["seed"] = row.seed;
    r["informative_pairs"] = row.informative_pairs;
    Json records = Json::array();
    for (const MethodRecord& rec : row.records) {
      Json m;
      m["method"] = MethodName(rec.method);
      m["ok"] = rec.ok;
      if (!rec.ok) m["diagnostic"] = rec.diagnostic;
      m["objective"] = rec.objective;
      if (!deterministic) m["elapsed_seconds"] = rec.elapsed;
      if (rec.method == Method::kMip && rec.ok) {
        m["status"] = rec.status;
        m["gap_percent"] = rec.gap;
      }
      m["outcome"] = OutcomeName(rec.outcome);
      m["beta"] = rec.beta;
      records.push_back(std::move(m));
    }
    r["methods"] = std::move(records);
    rows.push_back(std::move(r));
  }
  j["replications"] = std::move(rows);
  return j;
}

Json MakeReport(const ReportContext& context, const Json& body) {
  Json j;
  j["tool"] = "mrcmip";
  j["version"] = kVersion;
  j["command"] = context.command;
  Json config;
  for (const auto& [key, value] : context.config) config[key] = value;
  j["config"] = std::move(config);
  if (!context.deterministic) j["created_utc"] = UtcNow();
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j;
}

std::string FormatReport(const Json& report) { return report.dump(2) + "\n"; }

std::string ComparisonCsv(const MonteCarloResult& result, bool deterministic) {
  std::string out =
      "replication,seed,method,ok,objective,elapsed,gap,status,outcome,"
      "diagnostic\n";
  for (const ComparisonRow& row : result.rows) {
    for (const MethodRecord& rec : row.records) {
      const bool mip = rec.method == Method::kMip && rec.ok;
      absl::StrAppend(&out, row.replication, ",", row.seed, ",",
                      MethodName(rec.method), ",", rec.ok ? 1 : 0, ",",
                      Num(rec.objective), ",",
                      deterministic ? "" : Num(rec.elapsed), ",",
                      mip ? Num(rec.gap) : "", ",", rec.status, ",",
                      OutcomeName(rec.outcome), ",", CsvText(rec.diagnostic),
                      "\n");
    }
  }
  return out;
}

std::string SummaryCsv(const MonteCarloResult& result, bool deterministic) {
  std::string out =
      "method,loss,tie,win,max_time,median_time,max_gap,median_gap,failures\n";
  for (const MethodSummary& s : result.summary) {
    const bool mip = s.method == Method::kMip;
    absl::StrAppend(&out, MethodName(s.method), ",", Num(s.loss), ",",
                    Num(s.tie), ",", Num(s.win), ",",
                    deterministic ? "" : Num(s.max_time), ",",
                    deterministic ? "" : Num(s.median_time), ",",
                    mip ? Num(s.max_gap) : "", ",",
                    mip ? Num(s.median_gap) : "", ",", s.failures, "\n");
  }
  return out;
}

std::string ProfileCsv(const std::vector<ProfilePoint>& points) {
  std::string out = "alpha,objective\n";
  for (const ProfilePoint& p : points) {
    absl::StrAppend(&out, Num(p.alpha), ",", Num(p.objective), "\n");
  }
  return out;
}

std::string ProfileSvg(const std::vector<ProfilePoint>& points) {
  constexpr double kWidth = 640, kHeight = 400, kPad = 50;
  double lo = 1.0, hi = 0.0;
  for (const ProfilePoint& p : points) {
    lo = std::min(lo, p.objective);
    hi = std::max(hi, p.objective);
  }
  if (points.empty()) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) {
    lo -= 0.01;
    hi += 0.01;
  }
  auto px = [&](double a) { return kPad + a * (kWidth - 2 * kPad); };
  auto py = [&](double v) {
    return kHeight - kPad - (v - lo) / (hi - lo) * (kHeight - 2 * kPad);
  };
  // Hold each value until the next alpha.
  std::vector<std::string> path;
  for (std::size_t t = 0; t < points.size(); ++t) {
    const double y = py(points[t].objective);
    path.push_back(absl::StrFormat("%s%.2f,%.2f", t == 0 ? "M" : "L",
                                   px(points[t].alpha), y));
    if (t + 1 < points.size()) {
      path.push_back(absl::StrFormat("L%.2f,%.2f", px(points[t + 1].alpha), y));
    }
  }
  std::string svg = absl::StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
      "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n"
      "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
      kWidth, kHeight, kWidth, kHeight);
  absl::StrAppendFormat(
      &svg,
      "<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"black\"/>\n"
      "<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"black\"/>\n",
      kPad, kHeight - kPad, kWidth - kPad, kHeight - kPad, kPad, kPad, kPad,
      kHeight - kPad);
  absl::StrAppendFormat(
      &svg,
      "<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\">0</text>\n"
      "<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\">1</text>\n"
      "<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\" "
      "text-anchor=\"middle\">alpha</text>\n"
      "<text x=\"5\" y=\"%.2f\" font-size=\"12\">%.4f</text>\n"
      "<text x=\"5\" y=\"%.2f\" font-size=\"12\">%.4f</text>\n",
      px(0.0) - 4, kHeight - kPad + 16, px(1.0) - 4, kHeight - kPad + 16,
      kWidth / 2, kHeight - 10, py(lo), lo, py(hi), hi);
  absl::StrAppend(&svg, "<path d=\"", absl::StrJoin(path, " "),
                  "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n",
                  "</svg>\n");
  return svg;
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::PermissionDeniedError("cannot write " + path);
  out << text;
  out.close();
  if (!out) return absl::DataLossError("failed writing " + path);
  return absl::OkStatus();
}

}  // namespace mrcmip
