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

// Cardinality-constrained rank prediction.
//
// The normalized regressor of the Dataset is always included; at most s of
// the remaining p candidates receive a nonzero coefficient. Candidates are
// numbered 1..p in column order with the included regressor skipped.

#ifndef MRCMIP_BEST_SUBSET_H_
#define MRCMIP_BEST_SUBSET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "mrcmip/branch_and_bound.h"
#include "mrcmip/core.h"
#include "mrcmip/heuristics.h"
#include "mrcmip/objective.h"

namespace mrcmip {

struct SubsetSolution {
  // Full coefficient vector; exactly zero off the support.
  std::vector<double> beta;
  // 1-based candidate numbers with a nonzero coefficient, ascending.
  std::vector<int> support;
  // In-sample score recomputed from beta.
  ObjectiveValue score;
  MipSolution mip;
};

absl::StatusOr<SubsetSolution> FitBestSubset(const Dataset& train,
                                             int cardinality,
                                             const ParamBox& box,
                                             double epsilon,
                                             const BnbOptions& options);

// For each row k of the row-major matrix `x` (k columns = beta.size()), the
// number of rows whose index is strictly smaller.
absl::StatusOr<std::vector<std::int64_t>> PredictRanks(
    std::span<const double> beta, std::span<const double> x);

struct UnOptions {
  BnbOptions bnb;
  // Hold-out sets with at most this many unordered pairs are solved exactly
  // by the subset MIP; larger ones use the support search below.
  std::int64_t max_mip_pairs = 5000;
  // Per-support Nelder-Mead restarts (the first two start from the fitted
  // coefficients and from least squares on the support).
  int starts_per_support = 4;
  HeuristicOptions search;
  std::uint64_t seed = 0;
};

struct UnEstimate {
  // Hold-out score of the fitted coefficients.
  ObjectiveValue fitted_score;
  // Plug-in estimate of the best attainable hold-out score.
  ObjectiveValue best_score;
  std::vector<double> best_beta;
  // "mip" or "support-search".
  std::string best_method;
  double u_n = 0.0;
};

// max(best hold-out score - hold-out score of the fit, 0). The best score is
// never below the fit's own score, since the fit is a candidate.
absl::StatusOr<UnEstimate> EstimateUn(const SubsetSolution& fitted,
                                      int cardinality, const Dataset& eval,
                                      const ParamBox& box, double epsilon,
                                      const UnOptions& options);

}  // namespace mrcmip

#endif  // MRCMIP_BEST_SUBSET_H_
