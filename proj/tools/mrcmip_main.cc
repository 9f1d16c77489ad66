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

// mrcmip: maximum rank correlation estimation by mixed integer optimization.
//
//   mrcmip estimate data.csv --method all --budget-secs 60
//   mrcmip subset train.csv --cardinality 2 --eval-csv test.csv
//   mrcmip simulate --family binary --n 50 --k 2 --reps 10 --out rows.csv
//   mrcmip profile data.csv --beta-a 1,2 --beta-b 1,0 --steps 5 --svg p.svg
//
// MRCMIP_BUDGET_SECS, MRCMIP_EPSILON and MRCMIP_WORKERS replace the built-in
// defaults; flags win over both.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "mrcmip/commands.h"

namespace {

using mrcmip::CommonSettings;

// Environment defaults. A malformed value is a usage error.
absl::Status ApplyEnvironment(CommonSettings& c) {
  if (const char* v = std::getenv("MRCMIP_BUDGET_SECS")) {
    if (!absl::SimpleAtod(v, &c.budget_secs)) {
      return absl::InvalidArgumentError("MRCMIP_BUDGET_SECS is not a number");
    }
  }
  if (const char* v = std::getenv("MRCMIP_EPSILON")) {
    if (!absl::SimpleAtod(v, &c.epsilon)) {
      return absl::InvalidArgumentError("MRCMIP_EPSILON is not a number");
    }
  }
  if (const char* v = std::getenv("MRCMIP_WORKERS")) {
    if (!absl::SimpleAtoi(v, &c.workers)) {
      return absl::InvalidArgumentError("MRCMIP_WORKERS is not an integer");
    }
  }
  return absl::OkStatus();
}

void AddCommon(CLI::App* app, CommonSettings& c, bool with_data) {
  app->add_option("--budget-secs", c.budget_secs, "Time budget per method")
      ->capture_default_str();
  app->add_option("--epsilon", c.epsilon, "Strict-inequality slack")
      ->capture_default_str();
  app->add_option("--box", c.box, "Coefficient box LO:HI")
      ->capture_default_str();
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_option("--workers", c.workers, "Worker threads")
      ->capture_default_str();
  app->add_flag("--deterministic", c.deterministic,
                "Reproducible runs; wall-clock fields are omitted");
  if (with_data) {
    app->add_option("--normalize-col", c.normalize_col,
                    "1-based regressor whose coefficient is fixed")
        ->capture_default_str();
    app->add_option("--normalize-sign", c.normalize_sign,
                    "Fixed coefficient, 1 or -1")
        ->capture_default_str();
    app->add_option("--header", c.header, "CSV header: none, present or auto")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, mrcmip::HeaderMode>{
                {"none", mrcmip::HeaderMode::kNone},
                {"present", mrcmip::HeaderMode::kPresent},
                {"auto", mrcmip::HeaderMode::kAuto}},
            CLI::ignore_case));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum rank correlation estimation by mixed integer "
               "optimization"};
  app.require_subcommand(1);

  CommonSettings defaults;
  if (absl::Status s = ApplyEnvironment(defaults); !s.ok()) {
    std::cerr << "error: " << s.message() << "\n";
    return mrcmip::ExitCode(s);
  }

  mrcmip::EstimateSettings estimate{defaults};
  auto* est = app.add_subcommand("estimate", "Fit the MRC estimator");
  est->add_option("csv", estimate.csv_path, "Data: y, then regressors")
      ->required();
  est->add_option("--method", estimate.methods,
                  "mip, nm, nm-multi, grid, sann, mcmc, all; comma-separated")
      ->capture_default_str();
  est->add_option("--out", estimate.common.out, "Report path");
  AddCommon(est, estimate.common, true);

  mrcmip::SubsetSettings subset{defaults};
  auto* sub = app.add_subcommand("subset", "Best-subset rank prediction");
  sub->add_option("csv", subset.csv_path, "Training data")->required();
  sub->add_option("--cardinality,-s", subset.cardinality,
                  "Nonzero candidate coefficients allowed")
      ->required();
  sub->add_option("--eval-csv", subset.eval_csv, "Hold-out data for U_n");
  sub->add_option("--out", subset.common.out, "Report path");
  AddCommon(sub, subset.common, true);

  mrcmip::SimulateSettings simulate{defaults};
  auto* sim = app.add_subcommand("simulate", "Monte Carlo comparison");
  sim->add_option("--family", simulate.family, "binary or censored")
      ->capture_default_str();
  sim->add_option("--n", simulate.n, "Observations")->capture_default_str();
  sim->add_option("--k", simulate.k, "Regressors")->capture_default_str();
  sim->add_option("--reps", simulate.reps, "Replications")
      ->capture_default_str();
  sim->add_option("--noise-sd", simulate.noise_sd, "Error standard deviation")
      ->capture_default_str();
  sim->add_option("--methods", simulate.methods, "Methods to compare")
      ->capture_default_str();
  sim->add_option("--out", simulate.common.out, "Per-replication CSV path");
  sim->add_option("--report", simulate.report, "JSON report path");
  AddCommon(sim, simulate.common, false);

  mrcmip::ProfileSettings profile{defaults};
  auto* pro = app.add_subcommand(
      "profile", "Objective along the segment between two coefficient vectors");
  pro->add_option("csv", profile.csv_path, "Data")->required();
  pro->add_option("--beta-a", profile.beta_a, "Comma-separated, at alpha = 1")
      ->required();
  pro->add_option("--beta-b", profile.beta_b, "Comma-separated, at alpha = 0")
      ->required();
  pro->add_option("--steps", profile.steps, "Grid points including endpoints")
      ->capture_default_str();
  pro->add_option("--out", profile.common.out, "CSV path");
  pro->add_option("--svg", profile.svg, "SVG chart path");
  AddCommon(pro, profile.common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  absl::StatusOr<std::string> result;
  if (*est) {
    result = mrcmip::CmdEstimate(estimate);
  } else if (*sub) {
    result = mrcmip::CmdSubset(subset);
  } else if (*sim) {
    result = mrcmip::CmdSimulate(simulate);
  } else {
    result = mrcmip::CmdProfile(profile);
  }
  if (!result.ok()) {
    std::cerr << "error: " << result.status().message() << "\n";
    return mrcmip::ExitCode(result.status());
  }
  std::cout << *result;
  return 0;
}
