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

// Bounded-variable primal simplex for
//
//   maximize c'z  subject to  A z <= b,  l <= z <= u
//
// with finite l and u that is finite or +infinity. The kernel keeps a dense
// tableau, so it suits problems with few rows; the branch-and-bound engine
// hands it node relaxations in dual form, which have one row per continuous
// variable.
// Pricing is Dantzig's largest reduced cost; after a streak of degenerate
// pivots the kernel falls back to Bland's rule until the objective moves.

#ifndef MRCMIP_LP_H_
#define MRCMIP_LP_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace mrcmip {

struct SparseRow {
  std::vector<int> index;
  std::vector<double> value;
};

struct LpModel {
  std::vector<double> c;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<SparseRow> rows;
  std::vector<double> rhs;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int AddVariable(double lo, double hi, double cost);
  void AddRow(SparseRow row, double rhs_value);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> z;
  double objective = 0.0;
  // Nonnegative multiplier of each row at the optimum.
  std::vector<double> duals;
  std::int64_t iterations = 0;
};

struct LpOptions {
  double tol_feas = 1e-7;
  double tol_opt = 1e-7;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak = 50;
  std::int64_t max_iterations = 1'000'000;
};

// Infeasible and unbounded problems are reported through the status; an
// inconsistent model (dimension mismatch, l > u, infinite l, NaN) is an
// InvalidArgument error.
absl::StatusOr<LpSolution> SolveLp(const LpModel& model,
                                   const LpOptions& options = {});

}  // namespace mrcmip

#endif  // MRCMIP_LP_H_
