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
// Command implementations behind the mrcmip binary.
//
// Each command validates its settings, runs, writes its files and returns
// the text to print. Errors carry a status code that ExitCode maps to the
// process exit status.

#ifndef MRCMIP_COMMANDS_H_
#define MRCMIP_COMMANDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "mrcmip/csv.h"

namespace mrcmip {

// 0 success, 2 usage, 3 missing input, 4 unreadable data, 5 model without a
// feasible point, 1 anything else.
int ExitCode(const absl::Status& status);

struct CommonSettings {
  double budget_secs = 600.0;
  double epsilon = 1e-6;
  // "LO:HI", applied to every free coefficient.
  std::string box = "-10:10";
  // 1-based regressor column (column 1 is the first after y).
  int normalize_col = 1;
  double normalize_sign = 1.0;
  std::uint64_t seed = 1;
  int workers = 1;
  bool deterministic = false;
  HeaderMode header = HeaderMode::kAuto;
  // Report path; empty prints only.
  std::string out;
};

struct EstimateSettings {
  CommonSettings common;
  std::string csv_path;
  std::string methods = "mip";
};

struct SubsetSettings {
  CommonSettings common;
  std::string csv_path;
  int cardinality = 1;
  std::string eval_csv;
};

struct SimulateSettings {
  CommonSettings common;
  std::string family = "binary";
  int n = 50;
  int k = 2;
  int reps = 10;
  double noise_sd = 0.25;
  std::string methods = "all";
  // JSON report with the summary; --out holds the per-replication CSV.
  std::string report;
};

struct ProfileSettings {
  CommonSettings common;
  std::string csv_path;
  std::string beta_a;
  std::string beta_b;
  int steps = 101;
  std::string svg;
};

absl::StatusOr<std::string> CmdEstimate(const EstimateSettings& settings);
absl::StatusOr<std::string> CmdSubset(const SubsetSettings& settings);
absl::StatusOr<std::string> CmdSimulate(const SimulateSettings& settings);
absl::StatusOr<std::string> CmdProfile(const ProfileSettings& settings);

// "LO:HI".
absl::StatusOr<std::pair<double, double>> ParseBox(const std::string& text);
// Comma-separated reals.
absl::StatusOr<std::vector<double>> ParseVector(const std::string& text);

}  // namespace mrcmip

#endif  // MRCMIP_COMMANDS_H_
