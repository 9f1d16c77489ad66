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

#include "mrcmip/simulate.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mrcmip/objective.h"

namespace mrcmip {
namespace {

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Index x'beta + e for every observation, drawing x before e row by row.
absl::StatusOr<Dataset> Draw(const Design& design, bool censored) {
  if (auto s = ValidateDesign(design); !s.ok()) return s;
  const int n = design.n;
  const int k = design.k;
  std::vector<double> beta = design.beta_true;
  if (beta.empty()) beta.assign(k, 1.0);
  std::mt19937_64 rng(design.seed);
  std::normal_distribution<double> normal;
  std::vector<double> x(static_cast<std::size_t>(n) * k);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double index = 0.0;
    for (int c = 0; c < k; ++c) {
      const double v = normal(rng);
      x[static_cast<std::size_t>(i) * k + c] = v;
      index += v * beta[c];
    }
    const double latent = index + design.noise_sd * normal(rng);
    y[i] = censored ? std::max(latent, 0.0) : (latent > 0.0 ? 1.0 : 0.0);
  }
  return Dataset::Create(std::move(y), std::move(x), k, 0, 1.0);
}

ComparisonRow RunReplication(const Design& design, int rep) {
  ComparisonRow row;
  row.replication = rep + 1;
  row.seed = ReplicationSeed(design.seed, rep);
  Design local = design;
  local.seed = row.seed;
  auto data = Generate(local);
  auto box = ParamBox::Uniform(design.k - 1, design.box_lower,
                               design.box_upper);
  EstimateOptions options = design.estimate;
  options.time_budget = design.time_budget;
  for (Method method : design.methods) {
    MethodRecord record;
    record.method = method;
    absl::StatusOr<MethodResult> result =
        !data.ok() ? absl::StatusOr<MethodResult>(data.status())
        : !box.ok() ? absl::StatusOr<MethodResult>(box.status())
                    : RunMethod(method, *data, *box, options, row.seed);
    if (result.ok()) {
      record.ok = true;
      record.beta = result->solution.beta;
      record.objective = result->solution.objective;
      record.elapsed = result->solution.elapsed;
      if (result->mip) {
        record.gap = result->mip->gap;
        record.status = MipStatusName(result->mip->status);
        record.nodes = result->mip->nodes;
      }
    } else {
      record.diagnostic = std::string(result.status().message());
    }
    row.records.push_back(std::move(record));
  }
  if (data.ok()) {
    row.informative_pairs = static_cast<std::int64_t>(
        BuildPairs(*data, /*drop_ties=*/true).size());
  }
  return row;
}

}  // namespace

std::string FamilyName(Family family) {
  return family == Family::kBinary ? "binary" : "censored";
}

absl::StatusOr<Family> ParseFamily(std::string_view name) {
  if (name == "binary") return Family::kBinary;
  if (name == "censored") return Family::kCensored;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown family '", std::string(name),
                   "'; expected binary or censored"));
}

absl::Status ValidateDesign(const Design& design) {
  if (design.n < 2) return absl::InvalidArgumentError("n must be at least 2");
  if (design.k < 2) return absl::InvalidArgumentError("k must be at least 2");
  if (!(design.noise_sd > 0.0) || !std::isfinite(design.noise_sd)) {
    return absl::InvalidArgumentError("noise_sd must be positive");
  }
  if (!design.beta_true.empty() &&
      static_cast<int>(design.beta_true.size()) != design.k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "beta_true has ", design.beta_true.size(), " entries, expected ",
        design.k));
  }
  if (!design.beta_true.empty() && design.beta_true[0] != 1.0) {
    return absl::InvalidArgumentError(
        "the first true coefficient is the normalized one and must be 1");
  }
  if (design.methods.empty()) {
    return absl::InvalidArgumentError("no method requested");
  }
  if (!(design.time_budget > 0.0)) {
    return absl::InvalidArgumentError("time budget must be positive");
  }
  if (design.replications < 1) {
    return absl::InvalidArgumentError("replications must be positive");
  }
  if (!(design.box_lower < design.box_upper)) {
    return absl::InvalidArgumentError("box lower bound must be below upper");
  }
  if (design.workers < 1) {
    return absl::InvalidArgumentError("workers must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> GenBinary(const Design& design) {
  return Draw(design, /*censored=*/false);
}

absl::StatusOr<Dataset> GenCensored(const Design& design) {
  return Draw(design, /*censored=*/true);
}

absl::StatusOr<Dataset> Generate(const Design& design) {
  return design.family == Family::kBinary ? GenBinary(design)
                                          : GenCensored(design);
}

std::uint64_t ReplicationSeed(std::uint64_t seed, int rep) {
  // splitmix64 step.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(rep) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kLoss:
      return "loss";
    case Outcome::kTie:
      return "tie";
    case Outcome::kWin:
      return "win";
  }
  return "tie";
}

Outcome Compare(double method_objective, double mip_objective) {
  const double diff = method_objective - mip_objective;
  if (diff > kTieTolerance) return Outcome::kWin;
  if (diff < -kTieTolerance) return Outcome::kLoss;
  return Outcome::kTie;
}

absl::StatusOr<MonteCarloResult> RunMonteCarlo(const Design& design) {
  if (auto s = ValidateDesign(design); !s.ok()) return s;
  MonteCarloResult out;
  out.rows.resize(design.replications);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int rep = next++; rep < design.replications; rep = next++) {
      out.rows[rep] = RunReplication(design, rep);
    }
  };
  const int workers = std::min(design.workers, design.replications);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  const auto mip_it =
      std::find(design.methods.begin(), design.methods.end(), Method::kMip);
  out.has_reference = mip_it != design.methods.end();
  const std::size_t mip_slot = mip_it - design.methods.begin();
  for (ComparisonRow& row : out.rows) {
    if (!out.has_reference) break;
    const MethodRecord& mip = row.records[mip_slot];
    for (std::size_t m = 0; m < row.records.size(); ++m) {
      MethodRecord& r = row.records[m];
      if (m == mip_slot) {
        r.outcome = Outcome::kTie;
      } else if (!r.ok) {
        r.outcome = Outcome::kLoss;
      } else if (!mip.ok) {
        r.outcome = Outcome::kWin;
      } else {
        r.outcome = Compare(r.objective, mip.objective);
      }
    }
  }

  for (std::size_t m = 0; m < design.methods.size(); ++m) {
    MethodSummary s;
    s.method = design.methods[m];
    std::vector<double> times, gaps;
    for (const ComparisonRow& row : out.rows) {
      const MethodRecord& r = row.records[m];
      switch (r.outcome) {
        case Outcome::kLoss:
          s.loss += 1.0;
          break;
        case Outcome::kTie:
          s.tie += 1.0;
          break;
        case Outcome::kWin:
          s.win += 1.0;
          break;
      }
      if (!r.ok) {
        ++s.failures;
        continue;
      }
      times.push_back(r.elapsed);
      if (s.method == Method::kMip) gaps.push_back(r.gap);
    }
    const double reps = static_cast<double>(out.rows.size());
    s.loss /= reps;
    s.tie /= reps;
    s.win /= reps;
    if (!times.empty()) {
      s.max_time = *std::max_element(times.begin(), times.end());
      s.median_time = Median(times);
    }
    if (!gaps.empty()) {
      s.max_gap = *std::max_element(gaps.begin(), gaps.end());
      s.median_gap = Median(gaps);
    }
    out.summary.push_back(s);
  }
  return out;
}

absl::StatusOr<std::vector<ProfilePoint>> ObjectiveProfile(
    const Dataset& d, const std::vector<double>& beta_a,
    const std::vector<double>& beta_b, int steps) {
  if (beta_a.size() != d.k() || beta_b.size() != d.k()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "coefficient vectors have ", beta_a.size(), " and ", beta_b.size(),
        " entries, data has ", d.k(), " regressors"));
  }
  if (steps < 2) return absl::InvalidArgumentError("steps must be at least 2");
  MrcEvaluator evaluator(d);
  std::vector<ProfilePoint> out;
  std::vector<double> beta(d.k());
  for (int t = 0; t < steps; ++t) {
    const double alpha =
        t == steps - 1 ? 1.0 : static_cast<double>(t) / (steps - 1);
    for (std::size_t c = 0; c < d.k(); ++c) {
      beta[c] = alpha == 1.0   ? beta_a[c]
                : alpha == 0.0 ? beta_b[c]
                               : alpha * beta_a[c] + (1.0 - alpha) * beta_b[c];
    }
    out.push_back({alpha, evaluator.Evaluate(beta).value()});
  }
  return out;
}

}  // namespace mrcmip
