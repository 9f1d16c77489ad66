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
// Simulated designs and the Monte Carlo comparison of MRC estimators.
//
// Regressors are i.i.d. N(0, 1), errors N(0, noise_sd^2), and the first
// coefficient is the normalized one, fixed at +1.

#ifndef MRCMIP_SIMULATE_H_
#define MRCMIP_SIMULATE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "mrcmip/core.h"
#include "mrcmip/estimate.h"

namespace mrcmip {

enum class Family { kBinary, kCensored };

std::string FamilyName(Family family);
absl::StatusOr<Family> ParseFamily(std::string_view name);

struct Design {
  Family family = Family::kBinary;
  int n = 50;
  int k = 2;
  std::uint64_t seed = 1;
  // Empty means all ones.
  std::vector<double> beta_true;
  double noise_sd = 0.25;
  std::vector<Method> methods = AllMethods();
  double time_budget = 600.0;
  int replications = 10;
  double box_lower = -10.0;
  double box_upper = 10.0;
  EstimateOptions estimate;
  // Replications processed at once. Results do not depend on it unless a
  // method is time-driven.
  int workers = 1;
};

absl::Status ValidateDesign(const Design& design);

// y = 1{x'beta + e > 0}.
absl::StatusOr<Dataset> GenBinary(const Design& design);
// y = max(x'beta + e, 0).
absl::StatusOr<Dataset> GenCensored(const Design& design);
absl::StatusOr<Dataset> Generate(const Design& design);

// Seed of replication `rep` (0-based) derived from the design seed.
std::uint64_t ReplicationSeed(std::uint64_t seed, int rep);

enum class Outcome { kLoss, kTie, kWin };
std::string OutcomeName(Outcome outcome);
inline constexpr double kTieTolerance = 1e-9;
// Method objective against the MIP objective.
Outcome Compare(double method_objective, double mip_objective);

struct MethodRecord {
  Method method = Method::kMip;
  bool ok = false;
  // Failure message when !ok.
  std::string diagnostic;
  std::vector<double> beta;
  double objective = 0.0;
  double elapsed = 0.0;
  // MIP only.
  double gap = 0.0;
  std::string status;
  std::int64_t nodes = 0;
  // Against the MIP of the same replication; kTie for the MIP itself. A failed
  // method is a loss.
  Outcome outcome = Outcome::kTie;
};

struct ComparisonRow {
  int replication = 0;
  std::uint64_t seed = 0;
  std::int64_t informative_pairs = 0;
  std::vector<MethodRecord> records;
};

struct MethodSummary {
  Method method = Method::kMip;
  double loss = 0.0;
  double tie = 0.0;
  double win = 0.0;
  double max_time = 0.0;
  double median_time = 0.0;
  // MIP only.
  double max_gap = 0.0;
  double median_gap = 0.0;
  int failures = 0;
};

struct MonteCarloResult {
  std::vector<ComparisonRow> rows;
  std::vector<MethodSummary> summary;
  // False when the MIP is not among the methods; outcomes are then all ties.
  bool has_reference = false;
};

absl::StatusOr<MonteCarloResult> RunMonteCarlo(const Design& design);

struct ProfilePoint {
  double alpha = 0.0;
  double objective = 0.0;
};

// Objective at alpha * beta_a + (1 - alpha) * beta_b for `steps` equi-spaced
// alpha in [0, 1], endpoints included.
absl::StatusOr<std::vector<ProfilePoint>> ObjectiveProfile(
    const Dataset& d, const std::vector<double>& beta_a,
    const std::vector<double>& beta_b, int steps);

}  // namespace mrcmip

#endif  // MRCMIP_SIMULATE_H_
