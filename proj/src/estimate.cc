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

#include "mrcmip/estimate.h"

#include <algorithm>
#include <chrono>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "mrcmip/objective.h"

namespace mrcmip {
namespace {

using Clock = std::chrono::steady_clock;

HeuristicMethod AsHeuristic(Method method) {
  switch (method) {
    case Method::kNelderMead:
      return HeuristicMethod::kNelderMead;
    case Method::kNelderMeadMulti:
      return HeuristicMethod::kNelderMeadMulti;
    case Method::kGrid:
      return HeuristicMethod::kGrid;
    case Method::kSann:
      return HeuristicMethod::kSann;
    case Method::kMcmc:
    case Method::kMip:
      break;
  }
  return HeuristicMethod::kMcmc;
}

}  // namespace

std::string MethodName(Method method) {
  if (method == Method::kMip) return "mip";
  return HeuristicMethodName(AsHeuristic(method));
}

std::vector<Method> AllMethods() {
  return {Method::kMip,  Method::kNelderMead, Method::kNelderMeadMulti,
          Method::kGrid, Method::kSann,       Method::kMcmc};
}

absl::StatusOr<Method> ParseMethod(std::string_view name) {
  for (Method m : AllMethods()) {
    if (MethodName(m) == name) return m;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown method '", absl::string_view(name.data(), name.size()),
                   "'; expected mip, nm, nm-multi, grid, sann, mcmc or all"));
}

absl::StatusOr<std::vector<Method>> ParseMethodList(std::string_view list) {
  std::vector<Method> out;
  for (absl::string_view token :
       absl::StrSplit(absl::string_view(list.data(), list.size()), ',',
                      absl::SkipWhitespace())) {
    std::vector<Method> add;
    if (token == "all") {
      add = AllMethods();
    } else {
      auto m = ParseMethod(std::string_view(token.data(), token.size()));
      if (!m.ok()) return m.status();
      add.push_back(*m);
    }
    for (Method m : add) {
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  if (out.empty()) return absl::InvalidArgumentError("no method requested");
  return out;
}

absl::StatusOr<MipSolution> EstimateMrcMip(const Dataset& d,
                                           const ParamBox& box,
                                           const EstimateOptions& options) {
  if (!(options.time_budget > 0.0)) {
    return absl::InvalidArgumentError("time budget must be positive");
  }
  const auto start = Clock::now();
  const PairSet pairs = BuildPairs(d, /*drop_ties=*/true);
  auto model = BuildMrcMip(pairs, box, options.epsilon);
  if (!model.ok()) return model.status();

  BnbOptions bnb = options.bnb;
  if (options.mip_warm_start && !bnb.warm_start) {
    HeuristicOptions h = options.heuristics;
    h.time_budget = std::max(options.time_budget * 0.05, 1e-3);
    MrcEvaluator evaluator(d);
    const FreeObjective objective = [&](std::span<const double> free) {
      return evaluator.EvaluateFree(free).value();
    };
    const std::vector<double> ols = d.FreePart(ComputeOlsStart(d, box).beta);
    bnb.warm_start = NelderMead(objective, ols, box, h).point;
  }
  const double used =
      std::chrono::duration<double>(Clock::now() - start).count();
  bnb.time_budget = std::max(options.time_budget - used, 1e-3);
  auto mip = BranchAndBound(*model, bnb);
  if (!mip.ok()) return mip.status();
  if (mip->status == MipStatus::kInfeasible) {
    return absl::FailedPreconditionError("MRC model has no feasible point");
  }
  auto value = MrcObjectiveFast(d, mip->solution.beta);
  if (!value.ok()) return value.status();
  mip->solution.method = "mip";
  mip->solution.objective = value->value();
  mip->solution.elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  return mip;
}

absl::StatusOr<MethodResult> RunMethod(Method method, const Dataset& d,
                                       const ParamBox& box,
                                       const EstimateOptions& options,
                                       std::uint64_t seed) {
  MethodResult out;
  out.method = method;
  if (method == Method::kMip) {
    auto mip = EstimateMrcMip(d, box, options);
    if (!mip.ok()) return mip.status();
    auto value = MrcObjectiveFast(d, mip->solution.beta);
    if (!value.ok()) return value.status();
    out.solution = mip->solution;
    out.concordant = value->concordant;
    out.denom = value->denom;
    out.mip = *std::move(mip);
    return out;
  }
  HeuristicOptions h = options.heuristics;
  h.time_budget = options.time_budget;
  auto r = RunHeuristic(AsHeuristic(method), d, box, h, seed);
  if (!r.ok()) return r.status();
  out.solution = r->solution;
  out.concordant = r->concordant;
  out.denom = r->denom;
  out.ols_fallback = r->ols_fallback;
  out.chain_mean = r->chain_mean;
  return out;
}

}  // namespace mrcmip
