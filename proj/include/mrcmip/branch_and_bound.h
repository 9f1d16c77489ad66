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

// LP-relaxation branch and bound for MipModel.
//
// Each node carries binary fixings and a box on the continuous variables.
// Before its relaxation is solved the node is propagated: fixed pair binaries
// become half-spaces that shrink the box, and pair binaries whose index
// difference has a single sign over the box are fixed. Big-M values in the
// node relaxation are by default recomputed from the node box, which is valid
// because every point of the subtree lies in it.
//
// The node relaxation has a row per pair but few continuous variables, so it
// is solved in dual form: one LP row per continuous variable and per free
// switch binary, one column per pair row. Only the big-M row that a pair's
// objective weight pushes against is kept; the other is slack at any optimum.
// The relaxation's beta is read off the dual multipliers.
//
// A node is dropped when its bound cannot beat the incumbent (objective
// values are integer numerators, so bounds are floored) or when its
// relaxation is integral, in which case the relaxation solution updates the
// incumbent. The beta of every relaxation is also rounded into an
// integer-feasible point as a primal heuristic.

#ifndef MRCMIP_BRANCH_AND_BOUND_H_
#define MRCMIP_BRANCH_AND_BOUND_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "mrcmip/core.h"
#include "mrcmip/lp.h"
#include "mrcmip/mip_model.h"

namespace mrcmip {

enum class NodeSelection { kBestBound, kDepthFirst };
enum class BranchRule { kMostFractional, kPairOrder };

struct NodeLogRecord {
  std::int64_t node_id = 0;
  int depth = 0;
  // Global dual bound and incumbent after the node was processed, in
  // objective units.
  double bound = 0.0;
  double incumbent = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
};

// One JSON object per line.
std::string FormatNodeLog(const NodeLogRecord& record);

struct BnbOptions {
  double time_budget = 600.0;
  NodeSelection node_selection = NodeSelection::kBestBound;
  BranchRule branch_rule = BranchRule::kMostFractional;
  double gap_tol = 0.0;
  std::optional<std::int64_t> max_nodes;
  // Forces a single worker so the node sequence is reproducible.
  bool deterministic = true;
  int workers = 1;
  // Continuous values used to seed the incumbent.
  std::optional<std::vector<double>> warm_start;
  bool rounding_heuristic = true;
  // Recompute each big-M from the node box. When false the model's values
  // are used as given.
  bool node_big_m = true;
  LpOptions lp;
  std::function<void(const NodeLogRecord&)> node_log;
};

// Binary assignment implied by continuous values `beta`: pair binaries are 1
// when v >= eps - tol and 0 when v <= tol, switch binaries are 1 exactly for
// nonzero coefficients. Returns nullopt when some v falls strictly inside
// (tol, eps - tol) or the cardinality row is violated.
std::optional<std::vector<std::int8_t>> CompleteAssignment(
    const MipModel& model, std::span<const double> beta, double tol = 1e-9);

absl::StatusOr<MipSolution> BranchAndBound(const MipModel& model,
                                           const BnbOptions& options);

}  // namespace mrcmip

#endif  // MRCMIP_BRANCH_AND_BOUND_H_
