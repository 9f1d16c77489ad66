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

// Derivative-free baseline optimizers over the free coefficients.
//
// Every search maximizes a callback on the free-coefficient vector inside a
// ParamBox and returns the best point it evaluated. The Dataset-level
// wrappers at the bottom plug in the MRC objective and report the full
// coefficient vector with an independently recomputed objective.

#ifndef MRCMIP_HEURISTICS_H_
#define MRCMIP_HEURISTICS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "mrcmip/core.h"

namespace mrcmip {

using FreeObjective = std::function<double(std::span<const double>)>;

struct HeuristicOptions {
  double time_budget = 600.0;

  int nm_max_iters = 500;
  double nm_reflect = 1.0;
  double nm_expand = 2.0;
  double nm_contract = 0.5;
  double nm_shrink = 0.5;
  // Initial simplex edge as a fraction of each coordinate's box width.
  double nm_initial_step = 0.1;
  double nm_reltol = 1e-8;
  // Restarts of the multi-start variant when the run must be reproducible;
  // otherwise restarts continue until the time budget.
  int nm_restarts = 20;

  int grid_points = 2001;
  int grid_max_sweeps = 100;

  double sann_initial_temp = 0.05;
  double sann_cooling_rate = 0.999;
  int sann_steps = 10000;
  // Proposal standard deviation as a fraction of each box width.
  double sann_proposal_scale = 0.1;

  int mcmc_chain_length = 5000;
  int mcmc_burn_in = 1000;
  double mcmc_proposal_scale = 0.1;
  double mcmc_lambda = 1.0;

  bool deterministic = true;
};

absl::Status ValidateHeuristicOptions(const HeuristicOptions& options);

struct SearchResult {
  std::vector<double> point;
  double value = 0.0;
  std::int64_t evaluations = 0;
  double elapsed = 0.0;
  // Post-burn-in mean of an MCMC chain; empty for other methods.
  std::vector<double> chain_mean;
};

// Least squares of y on [1, X], slopes divided by the slope of the
// normalized column and multiplied by its sign, free part clipped to the box.
struct OlsStart {
  std::vector<double> beta;
  // True when the design was singular or the normalized slope vanished; the
  // start is then the box midpoint.
  bool fallback = false;
};
OlsStart ComputeOlsStart(const Dataset& d, const ParamBox& box);

// Simplex search from `start` with projection onto the box.
SearchResult NelderMead(const FreeObjective& objective,
                        std::span<const double> start, const ParamBox& box,
                        const HeuristicOptions& options);

// Nelder-Mead from `start`, then from uniform draws on the box.
SearchResult NelderMeadMultiStart(const FreeObjective& objective,
                                  std::span<const double> start,
                                  const ParamBox& box,
                                  const HeuristicOptions& options,
                                  std::uint64_t seed);

// Coordinate sweeps over grid_points equi-spaced values per coordinate.
SearchResult IterativeGridSearch(const FreeObjective& objective,
                                 std::span<const double> start,
                                 const ParamBox& box,
                                 const HeuristicOptions& options);

SearchResult SimulatedAnnealing(const FreeObjective& objective,
                                std::span<const double> start,
                                const ParamBox& box,
                                const HeuristicOptions& options,
                                std::uint64_t seed);

// Random-walk Metropolis on exp(mcmc_lambda * sample_size * objective) with a
// flat prior on the box. Returns the best post-burn-in draw.
SearchResult McmcEstimate(const FreeObjective& objective,
                          std::span<const double> start, const ParamBox& box,
                          const HeuristicOptions& options, double sample_size,
                          std::uint64_t seed);

enum class HeuristicMethod { kNelderMead, kNelderMeadMulti, kGrid, kSann, kMcmc };

std::string HeuristicMethodName(HeuristicMethod method);

struct HeuristicSolution {
  Solution solution;
  std::int64_t concordant = 0;
  std::int64_t denom = 1;
  bool ols_fallback = false;
  // Full-length chain mean for MCMC.
  std::vector<double> chain_mean;
};

// Runs `method` on the MRC objective of `d`, starting from the OLS start.
absl::StatusOr<HeuristicSolution> RunHeuristic(HeuristicMethod method,
                                               const Dataset& d,
                                               const ParamBox& box,
                                               const HeuristicOptions& options,
                                               std::uint64_t seed);

}  // namespace mrcmip

#endif  // MRCMIP_HEURISTICS_H_
