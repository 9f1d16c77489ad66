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

#include "mrcmip/commands.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "mrcmip/best_subset.h"
#include "mrcmip/core.h"
#include "mrcmip/estimate.h"
#include "mrcmip/report.h"
#include "mrcmip/simulate.h"

namespace mrcmip {
namespace {

using Json = nlohmann::ordered_json;

// Problems with the input file are reported as data errors, not usage ones.
absl::Status AsDataError(const absl::Status& s, const std::string& path) {
  if (s.code() == absl::StatusCode::kNotFound) return s;
  return absl::DataLossError(absl::StrCat(path, ": ", s.message()));
}

absl::Status CheckCommon(const CommonSettings& c) {
  if (!(c.budget_secs > 0.0) || !std::isfinite(c.budget_secs)) {
    return absl::InvalidArgumentError("--budget-secs must be positive");
  }
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
    return absl::InvalidArgumentError("--epsilon must be positive");
  }
  if (c.normalize_sign != 1.0 && c.normalize_sign != -1.0) {
    return absl::InvalidArgumentError("--normalize-sign must be 1 or -1");
  }
  if (c.normalize_col < 1) {
    return absl::InvalidArgumentError("--normalize-col is 1-based");
  }
  if (c.workers < 1) return absl::InvalidArgumentError("--workers must be >= 1");
  return absl::OkStatus();
}

absl::StatusOr<Dataset> LoadDataset(const std::string& path,
                                    const CommonSettings& c) {
  CsvOptions csv;
  csv.header = c.header;
  auto rows = ReadCsvFile(path, csv);
  if (!rows.ok()) return AsDataError(rows.status(), path);
  if (!rows->empty() &&
      static_cast<std::size_t>(c.normalize_col) >= rows->front().size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--normalize-col ", c.normalize_col, " exceeds the ",
        rows->front().size() - 1, " regressor columns of ", path));
  }
  auto d = ValidateDataset(*rows, c.normalize_col - 1, c.normalize_sign);
  if (!d.ok()) return AsDataError(d.status(), path);
  if (d->k() < 2) {
    return absl::DataLossError(
        absl::StrCat(path, ": need at least two regressor columns"));
  }
  return d;
}

absl::StatusOr<ParamBox> MakeBox(const CommonSettings& c, std::size_t dim) {
  auto range = ParseBox(c.box);
  if (!range.ok()) return range.status();
  return ParamBox::Uniform(dim, range->first, range->second);
}

EstimateOptions MakeEstimateOptions(const CommonSettings& c) {
  EstimateOptions o;
  o.epsilon = c.epsilon;
  o.time_budget = c.budget_secs;
  o.bnb.time_budget = c.budget_secs;
  o.bnb.deterministic = c.deterministic;
  o.bnb.workers = c.deterministic ? 1 : c.workers;
  o.heuristics.time_budget = c.budget_secs;
  o.heuristics.deterministic = c.deterministic;
  return o;
}

std::vector<std::pair<std::string, Json>> CommonConfig(
    const CommonSettings& c) {
  return {{"budget_secs", c.budget_secs},
          {"epsilon", c.epsilon},
          {"box", c.box},
          {"normalize_col", c.normalize_col},
          {"normalize_sign", c.normalize_sign},
          {"seed", c.seed},
          {"workers", c.workers},
          {"deterministic", c.deterministic}};
}

absl::StatusOr<std::string> Finish(const ReportContext& context,
                                   const Json& body, const std::string& out) {
  const std::string text = FormatReport(MakeReport(context, body));
  if (!out.empty()) {
    if (auto s = WriteTextFile(out, text); !s.ok()) return s;
  }
  return text;
}

std::string Fixed(double v) { return absl::StrFormat("%.6f", v); }

}  // namespace

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return 2;
    case absl::StatusCode::kNotFound:
      return 3;
    case absl::StatusCode::kDataLoss:
      return 4;
    case absl::StatusCode::kFailedPrecondition:
      return 5;
    default:
      return 1;
  }
}

absl::StatusOr<std::pair<double, double>> ParseBox(const std::string& text) {
  std::vector<absl::string_view> parts = absl::StrSplit(text, ':');
  double lo = 0.0, hi = 0.0;
  if (parts.size() != 2 || !absl::SimpleAtod(parts[0], &lo) ||
      !absl::SimpleAtod(parts[1], &hi) || !std::isfinite(lo) ||
      !std::isfinite(hi) || !(lo < hi)) {
    return absl::InvalidArgumentError(
        absl::StrCat("--box expects LO:HI with LO < HI, got '", text, "'"));
  }
  return std::make_pair(lo, hi);
}

absl::StatusOr<std::vector<double>> ParseVector(const std::string& text) {
  std::vector<double> out;
  for (absl::string_view token : absl::StrSplit(text, ',')) {
    double v = 0.0;
    if (!absl::SimpleAtod(token, &v) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("'", token, "' in '", text, "' is not a number"));
    }
    out.push_back(v);
  }
  return out;
}

absl::StatusOr<std::string> CmdEstimate(const EstimateSettings& settings) {
  const CommonSettings& c = settings.common;
  if (auto s = CheckCommon(c); !s.ok()) return s;
  auto methods = ParseMethodList(settings.methods);
  if (!methods.ok()) return methods.status();
  auto d = LoadDataset(settings.csv_path, c);
  if (!d.ok()) return d.status();
  auto box = MakeBox(c, d->num_free());
  if (!box.ok()) return box.status();
  const EstimateOptions options = MakeEstimateOptions(c);

  Json results = Json::array();
  std::string table = absl::StrFormat("%-9s %12s %10s  %s\n", "method",
                                      "objective", "seconds", "beta");
  for (Method m : *methods) {
    auto r = RunMethod(m, *d, *box, options, c.seed);
    if (!r.ok()) return r.status();
    results.push_back(MethodJson(*r, c.deterministic));
    std::vector<std::string> beta;
    for (double b : r->solution.beta) beta.push_back(Fixed(b));
    absl::StrAppendFormat(&table, "%-9s %12s %10.2f  %s\n", MethodName(m),
                          Fixed(r->solution.objective), r->solution.elapsed,
                          absl::StrJoin(beta, " "));
  }
  ReportContext context;
  context.command = "estimate";
  context.deterministic = c.deterministic;
  context.config = CommonConfig(c);
  context.config.insert(context.config.begin(),
                        {{"csv", settings.csv_path},
                         {"methods", settings.methods}});
  Json body;
  body["dataset"] = DatasetJson(*d);
  body["results"] = std::move(results);
  auto text = Finish(context, body, settings.common.out);
  if (!text.ok()) return text.status();
  return settings.common.out.empty() ? *text : table;
}

absl::StatusOr<std::string> CmdSubset(const SubsetSettings& settings) {
  const CommonSettings& c = settings.common;
  if (auto s = CheckCommon(c); !s.ok()) return s;
  auto d = LoadDataset(settings.csv_path, c);
  if (!d.ok()) return d.status();
  const int p = static_cast<int>(d->num_free());
  if (settings.cardinality < 1 || settings.cardinality > p) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--cardinality ", settings.cardinality, " outside [1, ", p, "]"));
  }
  auto box = MakeBox(c, d->num_free());
  if (!box.ok()) return box.status();
  const EstimateOptions options = MakeEstimateOptions(c);
  auto fit = FitBestSubset(*d, settings.cardinality, *box, c.epsilon,
                           options.bnb);
  if (!fit.ok()) return fit.status();

  Json body;
  body["dataset"] = DatasetJson(*d);
  body["fit"] = SubsetJson(*fit, c.deterministic);
  std::string summary = absl::StrCat(
      "support: ", absl::StrJoin(fit->support, ","), "\nscore: ",
      Fixed(fit->score.value()), "\nstatus: ", MipStatusName(fit->mip.status),
      "\n");
  if (!settings.eval_csv.empty()) {
    auto eval = LoadDataset(settings.eval_csv, c);
    if (!eval.ok()) return eval.status();
    if (eval->k() != d->k()) {
      return absl::DataLossError(absl::StrCat(
          settings.eval_csv, ": ", eval->k(), " regressors, training data has ",
          d->k()));
    }
    UnOptions un;
    un.bnb = options.bnb;
    un.search = options.heuristics;
    un.seed = c.seed;
    auto u = EstimateUn(*fit, settings.cardinality, *eval, *box, c.epsilon, un);
    if (!u.ok()) return u.status();
    body["evaluation"] = UnJson(*u);
    body["evaluation"]["dataset"] = DatasetJson(*eval);
    absl::StrAppend(&summary, "u_n: ", Fixed(u->u_n), "\n");
  }
  ReportContext context;
  context.command = "subset";
  context.deterministic = c.deterministic;
  context.config = CommonConfig(c);
  context.config.insert(context.config.begin(),
                        {{"csv", settings.csv_path},
                         {"cardinality", settings.cardinality},
                         {"eval_csv", settings.eval_csv}});
  auto text = Finish(context, body, c.out);
  if (!text.ok()) return text.status();
  return c.out.empty() ? *text : summary;
}

absl::StatusOr<std::string> CmdSimulate(const SimulateSettings& settings) {
  const CommonSettings& c = settings.common;
  if (auto s = CheckCommon(c); !s.ok()) return s;
  Design design;
  auto family = ParseFamily(settings.family);
  if (!family.ok()) return family.status();
  auto methods = ParseMethodList(settings.methods);
  if (!methods.ok()) return methods.status();
  auto range = ParseBox(c.box);
  if (!range.ok()) return range.status();
  design.family = *family;
  design.n = settings.n;
  design.k = settings.k;
  design.seed = c.seed;
  design.noise_sd = settings.noise_sd;
  design.methods = *methods;
  design.time_budget = c.budget_secs;
  design.replications = settings.reps;
  design.box_lower = range->first;
  design.box_upper = range->second;
  design.estimate = MakeEstimateOptions(c);
  design.workers = c.deterministic ? 1 : c.workers;
  auto result = RunMonteCarlo(design);
  if (!result.ok()) return result.status();

  const std::string rows = ComparisonCsv(*result, c.deterministic);
  if (!c.out.empty()) {
    if (auto s = WriteTextFile(c.out, rows); !s.ok()) return s;
  }
  ReportContext context;
  context.command = "simulate";
  context.deterministic = c.deterministic;
  context.config = CommonConfig(c);
  context.config.insert(context.config.begin(),
                        {{"family", settings.family},
                         {"n", settings.n},
                         {"k", settings.k},
                         {"reps", settings.reps},
                         {"noise_sd", settings.noise_sd},
                         {"methods", settings.methods}});
  auto text =
      Finish(context, MonteCarloJson(*result, c.deterministic), settings.report);
  if (!text.ok()) return text.status();
  return SummaryCsv(*result, c.deterministic);
}

absl::StatusOr<std::string> CmdProfile(const ProfileSettings& settings) {
  const CommonSettings& c = settings.common;
  if (auto s = CheckCommon(c); !s.ok()) return s;
  auto a = ParseVector(settings.beta_a);
  if (!a.ok()) return a.status();
  auto b = ParseVector(settings.beta_b);
  if (!b.ok()) return b.status();
  auto d = LoadDataset(settings.csv_path, c);
  if (!d.ok()) return d.status();
  auto points = ObjectiveProfile(*d, *a, *b, settings.steps);
  if (!points.ok()) return points.status();
  const std::string csv = ProfileCsv(*points);
  if (!c.out.empty()) {
    if (auto s = WriteTextFile(c.out, csv); !s.ok()) return s;
  }
  if (!settings.svg.empty()) {
    if (auto s = WriteTextFile(settings.svg, ProfileSvg(*points)); !s.ok()) {
      return s;
    }
  }
  return csv;
}

}  // namespace mrcmip
