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

#include "mrcmip/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mrcmip {

int LpModel::AddVariable(double lo, double hi, double cost) {
  c.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return num_vars() - 1;
}

void LpModel::AddRow(SparseRow row, double rhs_value) {
  rows.push_back(std::move(row));
  rhs.push_back(rhs_value);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;

absl::Status CheckModel(const LpModel& m) {
  const int n = m.num_vars();
  if (static_cast<int>(m.lower.size()) != n ||
      static_cast<int>(m.upper.size()) != n) {
    return absl::InvalidArgumentError("bound vectors do not match c");
  }
  if (m.rhs.size() != m.rows.size()) {
    return absl::InvalidArgumentError("rhs length does not match row count");
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(m.c[j]) || !std::isfinite(m.lower[j]) ||
        std::isnan(m.upper[j]) || m.upper[j] == -kInf) {
      return absl::InvalidArgumentError(
          absl::StrCat("variable ", j, " has non-finite data"));
    }
    if (m.lower[j] > m.upper[j]) {
      return absl::InvalidArgumentError(
          absl::StrCat("variable ", j, " has lower > upper"));
    }
  }
  for (int r = 0; r < m.num_rows(); ++r) {
    const SparseRow& row = m.rows[r];
    if (row.index.size() != row.value.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " index/value length mismatch"));
    }
    if (!std::isfinite(m.rhs[r])) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has non-finite rhs"));
    }
    for (std::size_t t = 0; t < row.index.size(); ++t) {
      if (row.index[t] < 0 || row.index[t] >= n) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", r, " references variable ", row.index[t]));
      }
      if (!std::isfinite(row.value[t])) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", r, " has a non-finite coefficient"));
      }
    }
  }
  return absl::OkStatus();
}

// Tableau over columns [structural | slack | artificial]. Row r of the tableau
// is B^-1 [A I -E]; slacks and artificials exist per row, artificials only
// for rows whose initial slack would be negative.
class Simplex {
 public:
  Simplex(const LpModel& m, const LpOptions& o) : model_(m), options_(o) {}

  absl::StatusOr<LpSolution> Run() {
    Setup();
    if (num_artificial_ > 0) {
      std::vector<double> phase1(cols_, 0.0);
      for (int j = first_artificial_; j < cols_; ++j) phase1[j] = -1.0;
      auto s = Optimize(phase1);
      if (!s.ok()) return s.status();
      double infeasibility = 0.0;
      for (int r = 0; r < rows_; ++r) {
        if (basis_[r] >= first_artificial_) infeasibility += value_[basis_[r]];
      }
      if (infeasibility > options_.tol_feas) {
        LpSolution out;
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      for (int j = first_artificial_; j < cols_; ++j) upper_[j] = 0.0;
    }
    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < model_.num_vars(); ++j) cost[j] = model_.c[j];
    auto s = Optimize(cost);
    if (!s.ok()) return s.status();
    LpSolution out;
    out.iterations = iterations_;
    if (!*s) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    if (!PrimalFeasible()) RecomputeBasicValues();
    out.z.assign(value_.begin(), value_.begin() + model_.num_vars());
    for (int j = 0; j < model_.num_vars(); ++j) {
      out.z[j] = std::clamp(out.z[j], model_.lower[j], model_.upper[j]);
      out.objective += model_.c[j] * out.z[j];
    }
    // The slack of row r is a unit column, so its reduced cost is -y_r.
    out.duals.resize(rows_);
    for (int r = 0; r < rows_; ++r) {
      out.duals[r] = std::max(0.0, -reduced_[model_.num_vars() + r]);
    }
    return out;
  }

 private:
  double& T(int r, int j) { return tableau_[static_cast<std::size_t>(r) * cols_ + j]; }

  void Setup() {
    const int n = model_.num_vars();
    rows_ = model_.num_rows();
    // Residual of each row with structurals at their lower bounds.
    std::vector<double> residual(model_.rhs);
    for (int r = 0; r < rows_; ++r) {
      const SparseRow& row = model_.rows[r];
      for (std::size_t t = 0; t < row.index.size(); ++t) {
        residual[r] -= row.value[t] * model_.lower[row.index[t]];
      }
    }
    num_artificial_ = 0;
    for (double res : residual) num_artificial_ += res < 0.0 ? 1 : 0;
    first_artificial_ = n + rows_;
    cols_ = n + rows_ + num_artificial_;
    tableau_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
    lower_.assign(cols_, 0.0);
    upper_.assign(cols_, kInf);
    value_.assign(cols_, 0.0);
    at_upper_.assign(cols_, false);
    is_basic_.assign(cols_, false);
    basis_.assign(rows_, -1);
    for (int j = 0; j < n; ++j) {
      lower_[j] = model_.lower[j];
      upper_[j] = model_.upper[j];
      value_[j] = model_.lower[j];
    }
    int next_artificial = first_artificial_;
    for (int r = 0; r < rows_; ++r) {
      const SparseRow& row = model_.rows[r];
      const int slack = n + r;
      if (residual[r] >= 0.0) {
        for (std::size_t t = 0; t < row.index.size(); ++t) {
          T(r, row.index[t]) += row.value[t];
        }
        T(r, slack) = 1.0;
        basis_[r] = slack;
        value_[slack] = residual[r];
      } else {
        // A z + s - a = b with a basic: the row is negated so that a has
        // coefficient +1.
        const int art = next_artificial++;
        for (std::size_t t = 0; t < row.index.size(); ++t) {
          T(r, row.index[t]) -= row.value[t];
        }
        T(r, slack) = -1.0;
        T(r, art) = 1.0;
        basis_[r] = art;
        value_[art] = -residual[r];
      }
      is_basic_[basis_[r]] = true;
    }
  }

  // Returns false when the objective is unbounded.
  absl::StatusOr<bool> Optimize(const std::vector<double>& cost) {
    // Reduced costs d_j = c_j - c_B' T_j.
    reduced_.assign(cost.begin(), cost.end());
    for (int r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols_; ++j) reduced_[j] -= cb * T(r, j);
    }
    int streak = 0;
    bool bland = false;
    std::vector<int> nonzero;
    nonzero.reserve(cols_);
    while (true) {
      if (++iterations_ > options_.max_iterations) {
        return absl::ResourceExhaustedError("simplex iteration limit reached");
      }
      if (!bland) FlipBounded();
      const int q = ChooseEntering(bland);
      if (q < 0) return true;
      const double dir = at_upper_[q] ? -1.0 : 1.0;

      double step = upper_[q] - lower_[q];
      int leave = -1;
      double leave_alpha = 0.0;
      for (int r = 0; r < rows_; ++r) {
        const double alpha = T(r, q);
        if (std::abs(alpha) < kPivotTol) continue;
        const int b = basis_[r];
        const double rate = dir * alpha;  // x_B[r] decreases at this rate.
        double limit;
        if (rate > 0.0) {
          limit = (value_[b] - lower_[b]) / rate;
        } else {
          if (upper_[b] == kInf) continue;
          limit = (upper_[b] - value_[b]) / -rate;
        }
        limit = std::max(limit, 0.0);
        bool better = limit < step;
        if (!better && leave >= 0 && limit == step) {
          better = bland ? b < basis_[leave]
                         : std::abs(alpha) > std::abs(leave_alpha);
        }
        if (better) {
          step = limit;
          leave = r;
          leave_alpha = alpha;
        }
      }
      if (step == kInf) return false;

      if (step <= kDegenerateStep) {
        if (++streak >= options_.degenerate_streak) bland = true;
      } else {
        streak = 0;
        bland = false;
      }

      for (int r = 0; r < rows_; ++r) {
        const double alpha = T(r, q);
        if (alpha != 0.0) value_[basis_[r]] -= dir * step * alpha;
      }
      if (leave < 0) {
        // Bound flip.
        at_upper_[q] = !at_upper_[q];
        value_[q] = at_upper_[q] ? upper_[q] : lower_[q];
        continue;
      }
      value_[q] += dir * step;
      const int out = basis_[leave];
      const bool to_lower = dir * leave_alpha > 0.0;
      value_[out] = to_lower ? lower_[out] : upper_[out];
      at_upper_[out] = !to_lower;
      is_basic_[out] = false;
      is_basic_[q] = true;
      at_upper_[q] = false;
      basis_[leave] = q;
      Pivot(leave, q, nonzero);
    }
  }

  // Moves every improving bounded column to its other bound when that keeps
  // the basis feasible. Each move is a bound-flip pivot, done in one pass.
  void FlipBounded() {
    for (int j = 0; j < cols_; ++j) {
      if (is_basic_[j] || upper_[j] == kInf) continue;
      const double width = upper_[j] - lower_[j];
      if (width <= 0.0) continue;
      const double score = at_upper_[j] ? -reduced_[j] : reduced_[j];
      if (score <= options_.tol_opt) continue;
      const double dir = at_upper_[j] ? -1.0 : 1.0;
      bool fits = true;
      for (int r = 0; r < rows_ && fits; ++r) {
        const double alpha = T(r, j);
        if (alpha == 0.0) continue;
        const int b = basis_[r];
        const double next = value_[b] - dir * width * alpha;
        fits = next >= lower_[b] && next <= upper_[b];
      }
      if (!fits) continue;
      for (int r = 0; r < rows_; ++r) {
        const double alpha = T(r, j);
        if (alpha != 0.0) value_[basis_[r]] -= dir * width * alpha;
      }
      at_upper_[j] = !at_upper_[j];
      value_[j] = at_upper_[j] ? upper_[j] : lower_[j];
    }
  }

  int ChooseEntering(bool bland) const {
    int best = -1;
    double best_score = options_.tol_opt;
    for (int j = 0; j < cols_; ++j) {
      if (is_basic_[j] || upper_[j] - lower_[j] <= 0.0) continue;
      const double d = reduced_[j];
      const double score = at_upper_[j] ? -d : d;
      if (score <= options_.tol_opt) continue;
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  void Pivot(int r, int q, std::vector<int>& nonzero) {
    double* pivot_row = &T(r, 0);
    const double inv = 1.0 / pivot_row[q];
    nonzero.clear();
    for (int j = 0; j < cols_; ++j) {
      if (pivot_row[j] != 0.0) {
        pivot_row[j] *= inv;
        nonzero.push_back(j);
      }
    }
    pivot_row[q] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* row = &T(i, 0);
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j : nonzero) row[j] -= f * pivot_row[j];
      row[q] = 0.0;
    }
    const double f = reduced_[q];
    if (f != 0.0) {
      for (int j : nonzero) reduced_[j] -= f * pivot_row[j];
      reduced_[q] = 0.0;
    }
  }

  bool PrimalFeasible() const {
    const int n = model_.num_vars();
    for (int r = 0; r < rows_; ++r) {
      const SparseRow& row = model_.rows[r];
      double lhs = 0.0;
      for (std::size_t t = 0; t < row.index.size(); ++t) {
        lhs += row.value[t] * value_[row.index[t]];
      }
      if (lhs > model_.rhs[r] + options_.tol_feas) return false;
    }
    for (int j = 0; j < n; ++j) {
      if (value_[j] < model_.lower[j] - options_.tol_feas ||
          value_[j] > model_.upper[j] + options_.tol_feas) {
        return false;
      }
    }
    return true;
  }

  // Re-solves B x_B = b - N x_N from the original data to shed accumulated
  // tableau round-off.
  void RecomputeBasicValues() {
    const int n = model_.num_vars();
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(rows_, cols_);
    for (int r = 0; r < rows_; ++r) {
      const SparseRow& row = model_.rows[r];
      for (std::size_t t = 0; t < row.index.size(); ++t) {
        full(r, row.index[t]) += row.value[t];
      }
      full(r, n + r) = 1.0;
    }
    int art = first_artificial_;
    for (int r = 0; r < rows_ && art < cols_; ++r) {
      // Artificial columns were assigned to rows in order of appearance.
      double residual = model_.rhs[r];
      const SparseRow& row = model_.rows[r];
      for (std::size_t t = 0; t < row.index.size(); ++t) {
        residual -= row.value[t] * model_.lower[row.index[t]];
      }
      if (residual < 0.0) full(r, art++) = -1.0;
    }
    Eigen::MatrixXd basis(rows_, rows_);
    Eigen::VectorXd rhs(rows_);
    for (int r = 0; r < rows_; ++r) rhs(r) = model_.rhs[r];
    for (int j = 0; j < cols_; ++j) {
      if (!is_basic_[j] && value_[j] != 0.0) rhs -= full.col(j) * value_[j];
    }
    for (int r = 0; r < rows_; ++r) basis.col(r) = full.col(basis_[r]);
    const Eigen::VectorXd xb = basis.partialPivLu().solve(rhs);
    for (int r = 0; r < rows_; ++r) value_[basis_[r]] = xb(r);
  }

  const LpModel& model_;
  const LpOptions& options_;
  int rows_ = 0;
  int cols_ = 0;
  int num_artificial_ = 0;
  int first_artificial_ = 0;
  std::vector<double> tableau_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<bool> at_upper_;
  std::vector<bool> is_basic_;
  std::vector<int> basis_;
  std::vector<double> reduced_;
  std::int64_t iterations_ = 0;
};

}  // namespace

absl::StatusOr<LpSolution> SolveLp(const LpModel& model,
                                   const LpOptions& options) {
  if (auto s = CheckModel(model); !s.ok()) return s;
  Simplex simplex(model, options);
  return simplex.Run();
}

}  // namespace mrcmip
