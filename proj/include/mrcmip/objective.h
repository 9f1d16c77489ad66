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

// Rank correlation objectives.
//
// The maximum rank correlation objective of a full coefficient vector beta is
//
//   Q(beta) = #{(i, j) : x_i'beta > x_j'beta and y_i > y_j} / (n (n - 1))
//
// over ordered pairs i != j. The rank prediction score is the fraction of
// unordered pairs i < j for which 1{y_i > y_j} agrees with
// 1{x_i'beta > x_j'beta}, over n (n - 1) / 2. All comparisons are exact
// floating point comparisons; counts are integers so the two evaluators of Q
// can be compared bit for bit.

#ifndef MRCMIP_OBJECTIVE_H_
#define MRCMIP_OBJECTIVE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "mrcmip/core.h"

namespace mrcmip {

struct ObjectiveValue {
  std::int64_t concordant = 0;
  std::int64_t denom = 1;

  double value() const {
    return static_cast<double>(concordant) / static_cast<double>(denom);
  }
  friend bool operator==(const ObjectiveValue&,
                         const ObjectiveValue&) = default;
};

// O(n^2) double loop over ordered pairs.
absl::StatusOr<ObjectiveValue> MrcObjectiveNaive(const Dataset& d,
                                                 std::span<const double> beta);

// O(n log n): sort by index value, group exact index ties, and count
// cross-group pairs with a smaller outcome through a Fenwick tree over outcome
// ranks.
absl::StatusOr<ObjectiveValue> MrcObjectiveFast(const Dataset& d,
                                                std::span<const double> beta);

absl::StatusOr<ObjectiveValue> RankPredictionScore(
    const Dataset& d, std::span<const double> beta);

// Reusable evaluator for optimizers that call the objective many times.
// Holds scratch buffers, so one instance must not be shared across threads.
class MrcEvaluator {
 public:
  explicit MrcEvaluator(const Dataset& d);

  // `beta` is the full coefficient vector; the length is not checked.
  ObjectiveValue Evaluate(std::span<const double> beta);
  // Expands the free coefficients first.
  ObjectiveValue EvaluateFree(std::span<const double> free);

  const Dataset& dataset() const { return d_; }

 private:
  const Dataset& d_;
  // Outcome rank (0-based, ties share a rank) per observation.
  std::vector<int> y_rank_;
  int num_ranks_ = 0;
  std::vector<double> index_;
  std::vector<int> order_;
  std::vector<std::int64_t> tree_;
  std::vector<double> beta_;
};

// Rank prediction score in O(n log^2 n). The score depends on observation
// order (pairs are i < j), so this counts the two agreement kinds by divide
// and conquer over positions.
class RankScoreEvaluator {
 public:
  explicit RankScoreEvaluator(const Dataset& d);

  ObjectiveValue Evaluate(std::span<const double> beta);
  ObjectiveValue EvaluateFree(std::span<const double> free);
  const Dataset& dataset() const { return d_; }

 private:
  std::int64_t Count(int lo, int hi);
  void Add(int rank, int delta);
  int Prefix(int rank) const;

  const Dataset& d_;
  std::vector<int> y_rank_;
  std::vector<double> index_;
  // 1-based, ties share a rank.
  std::vector<int> v_rank_;
  std::vector<int> order_;
  std::vector<int> sorted_;
  std::vector<int> tree_;
  std::vector<double> beta_;
};

}  // namespace mrcmip

#endif  // MRCMIP_OBJECTIVE_H_
