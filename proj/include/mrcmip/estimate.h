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

// One entry point for every MRC estimator.
//
// Each method returns its coefficient vector together with the objective
// recomputed by the fast evaluator, so no method reports its own score.

#ifndef MRCMIP_ESTIMATE_H_
#define MRCMIP_ESTIMATE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "mrcmip/branch_and_bound.h"
#include "mrcmip/core.h"
#include "mrcmip/heuristics.h"
#include "mrcmip/mip_model.h"

namespace mrcmip {

enum class Method { kMip, kNelderMead, kNelderMeadMulti, kGrid, kSann, kMcmc };

// "mip", "nm", "nm-multi", "grid", "sann", "mcmc".
std::string MethodName(Method method);
absl::StatusOr<Method> ParseMethod(std::string_view name);
// Every method, MIP first.
std::vector<Method> AllMethods();
// Comma-separated names; "all" expands to AllMethods(). Duplicates are
// dropped, first occurrence kept.
absl::StatusOr<std::vector<Method>> ParseMethodList(std::string_view list);

struct EstimateOptions {
  double epsilon = kDefaultEpsilon;
  // Applied to every method.
  double time_budget = 600.0;
  BnbOptions bnb;
  HeuristicOptions heuristics;
  // Seeds the B&B incumbent with a Nelder-Mead run from the OLS start.
  bool mip_warm_start = true;
};

struct MethodResult {
  Method method = Method::kMip;
  // objective is recomputed from beta.
  Solution solution;
  std::int64_t concordant = 0;
  std::int64_t denom = 1;
  bool ols_fallback = false;
  // Set for the MIP only.
  std::optional<MipSolution> mip;
  // Post-burn-in chain mean for MCMC.
  std::vector<double> chain_mean;
};

// MRC estimate by branch and bound over the informative pairs of `d`.
absl::StatusOr<MipSolution> EstimateMrcMip(const Dataset& d,
                                           const ParamBox& box,
                                           const EstimateOptions& options);

absl::StatusOr<MethodResult> RunMethod(Method method, const Dataset& d,
                                       const ParamBox& box,
                                       const EstimateOptions& options,
                                       std::uint64_t seed);

}  // namespace mrcmip

#endif  // MRCMIP_ESTIMATE_H_
