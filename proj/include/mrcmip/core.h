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

// Domain types shared by every estimator: the dataset with its normalized
// regressor, the parameter box over the free coefficients, pairwise
// differences, and solver results.

#ifndef MRCMIP_CORE_H_
#define MRCMIP_CORE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace mrcmip {

// Outcomes y (length n) and a row-major regressor matrix X (n x k). The
// coefficient of column `normalized_index` is fixed to `normalized_sign`
// (+1 or -1); the remaining k-1 coefficients are free.
class Dataset {
 public:
  // Validates dimensions and finiteness. `x` is row-major with n*k entries.
  static absl::StatusOr<Dataset> Create(std::vector<double> y,
                                        std::vector<double> x, std::size_t k,
                                        std::size_t normalized_index,
                                        double normalized_sign);

  std::size_t n() const { return y_.size(); }
  std::size_t k() const { return k_; }
  std::size_t num_free() const { return k_ - 1; }
  std::size_t normalized_index() const { return normalized_index_; }
  double normalized_sign() const { return normalized_sign_; }

  double y(std::size_t i) const { return y_[i]; }
  std::span<const double> ys() const { return y_; }
  std::span<const double> x(std::size_t i) const {
    return {x_.data() + i * k_, k_};
  }
  std::span<const double> xs() const { return x_; }

  // Column index in X of free coefficient h.
  std::size_t FreeColumn(std::size_t h) const {
    return h < normalized_index_ ? h : h + 1;
  }

  // Inserts the fixed coefficient into a free-coefficient vector.
  std::vector<double> ExpandBeta(std::span<const double> free) const;
  // Drops the fixed coefficient from a full coefficient vector.
  std::vector<double> FreePart(std::span<const double> beta) const;

  // Same data with a different normalization.
  absl::StatusOr<Dataset> WithNormalization(std::size_t normalized_index,
                                            double normalized_sign) const;

 private:
  Dataset() = default;

  std::vector<double> y_;
  std::vector<double> x_;
  std::size_t k_ = 0;
  std::size_t normalized_index_ = 0;
  double normalized_sign_ = 1.0;
};

// Builds a Dataset from table rows whose first cell is y and remaining cells
// are regressors. Errors name the offending row/column (1-based).
absl::StatusOr<Dataset> ValidateDataset(
    const std::vector<std::vector<double>>& rows, std::size_t normalized_index,
    double normalized_sign);

// Box bounds on the free coefficients.
class ParamBox {
 public:
  static absl::StatusOr<ParamBox> Create(std::vector<double> lower,
                                         std::vector<double> upper);
  // The same interval [lo, hi] for each of `dim` coefficients.
  static absl::StatusOr<ParamBox> Uniform(std::size_t dim, double lo,
                                          double hi);

  std::size_t dim() const { return lower_.size(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  double lower(std::size_t h) const { return lower_[h]; }
  double upper(std::size_t h) const { return upper_[h]; }
  bool Contains(std::span<const double> free, double tol = 0.0) const;
  std::vector<double> Midpoint() const;
  void Clip(std::span<double> free) const;

 private:
  ParamBox() = default;

  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct Pair {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  // +1 when y_i > y_j. For unordered pairs that are not strictly increasing
  // in y the weight is -1; ordered pairs without y_i > y_j carry 0.
  int weight = 0;
  bool y_greater = false;
};

// Pairwise differences x_ij = x_i - x_j, stored row-major (one k-vector per
// pair), plus the normalization that the model builders need.
struct PairSet {
  std::vector<Pair> pairs;
  std::vector<double> diffs;
  std::size_t k = 0;
  std::size_t normalized_index = 0;
  double normalized_sign = 1.0;
  // Number of candidate pairs before tie dropping.
  std::int64_t n_pairs_total = 0;
  // n(n-1) for ordered pairs, n(n-1)/2 for unordered ones.
  std::int64_t denom = 1;

  std::size_t size() const { return pairs.size(); }
  std::span<const double> diff(std::size_t p) const {
    return {diffs.data() + p * k, k};
  }
};

// Ordered pairs (i, j), i != j. With `drop_ties` only pairs with y_i > y_j are
// kept; otherwise all n(n-1) pairs are stored. denom = n(n-1).
PairSet BuildPairs(const Dataset& d, bool drop_ties);

// Unordered pairs i < j with ties retained; denom = n(n-1)/2.
PairSet BuildUnorderedPairs(const Dataset& d);

struct Solution {
  std::vector<double> beta;
  double objective = 0.0;
  std::string method;
  double elapsed = 0.0;
  std::int64_t evaluations = 0;
};

enum class MipStatus { kOptimal, kTimeLimit, kInfeasible };

std::string MipStatusName(MipStatus status);

struct MipSolution {
  Solution solution;
  // Binary assignment in model order (pair binaries, then switch binaries).
  std::vector<std::int8_t> binaries;
  // Objective as an exact ratio numerator / denom.
  std::int64_t numerator = 0;
  std::int64_t denom = 1;
  double dual_bound = 0.0;
  // Percent.
  double gap = 0.0;
  std::int64_t nodes = 0;
  std::int64_t lp_solves = 0;
  MipStatus status = MipStatus::kInfeasible;
};

// 100 * (bound - objective) / max(|objective|, kGapFloor).
inline constexpr double kGapFloor = 1e-10;
double RelativeGapPercent(double dual_bound, double objective);

// FNV-1a over the raw bytes of y and X.
std::uint64_t Fingerprint(const Dataset& d);

}  // namespace mrcmip

#endif  // MRCMIP_CORE_H_
