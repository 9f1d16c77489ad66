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

#include "mrcmip/objective.h"

#include <algorithm>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mrcmip {
namespace {

absl::Status CheckBeta(const Dataset& d, std::span<const double> beta) {
  if (beta.size() != d.k()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "coefficient vector has length ", beta.size(), ", expected ", d.k()));
  }
  return absl::OkStatus();
}

double Index(std::span<const double> x, std::span<const double> beta) {
  double v = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) v += x[c] * beta[c];
  return v;
}

std::vector<double> IndexValues(const Dataset& d,
                                std::span<const double> beta) {
  std::vector<double> v(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) v[i] = Index(d.x(i), beta);
  return v;
}

}  // namespace

absl::StatusOr<ObjectiveValue> MrcObjectiveNaive(
    const Dataset& d, std::span<const double> beta) {
  if (auto s = CheckBeta(d, beta); !s.ok()) return s;
  const std::vector<double> v = IndexValues(d, beta);
  ObjectiveValue out;
  const auto n = static_cast<std::int64_t>(d.n());
  out.denom = n * (n - 1);
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.n(); ++j) {
      if (i != j && v[i] > v[j] && d.y(i) > d.y(j)) ++out.concordant;
    }
  }
  return out;
}

absl::StatusOr<ObjectiveValue> MrcObjectiveFast(
    const Dataset& d, std::span<const double> beta) {
  if (auto s = CheckBeta(d, beta); !s.ok()) return s;
  MrcEvaluator evaluator(d);
  return evaluator.Evaluate(beta);
}

absl::StatusOr<ObjectiveValue> RankPredictionScore(
    const Dataset& d, std::span<const double> beta) {
  if (auto s = CheckBeta(d, beta); !s.ok()) return s;
  const std::vector<double> v = IndexValues(d, beta);
  ObjectiveValue out;
  const auto n = static_cast<std::int64_t>(d.n());
  out.denom = n * (n - 1) / 2;
  const auto y = d.ys();
  for (std::size_t i = 0; i < d.n(); ++i) {
    const double vi = v[i];
    const double yi = y[i];
    std::int64_t agree = 0;
    for (std::size_t j = i + 1; j < d.n(); ++j) {
      agree += static_cast<std::int64_t>((yi > y[j]) == (vi > v[j]));
    }
    out.concordant += agree;
  }
  return out;
}

MrcEvaluator::MrcEvaluator(const Dataset& d)
    : d_(d), y_rank_(d.n()), index_(d.n()), order_(d.n()), beta_(d.k()) {
  std::vector<double> sorted(d.ys().begin(), d.ys().end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  num_ranks_ = static_cast<int>(sorted.size());
  for (std::size_t i = 0; i < d.n(); ++i) {
    y_rank_[i] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), d.y(i)) -
        sorted.begin());
  }
  tree_.assign(num_ranks_ + 1, 0);
}

ObjectiveValue MrcEvaluator::Evaluate(std::span<const double> beta) {
  const std::size_t n = d_.n();
  for (std::size_t i = 0; i < n; ++i) index_[i] = Index(d_.x(i), beta);
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(), [this](int a, int b) {
    return index_[a] < index_[b];
  });
  std::fill(tree_.begin(), tree_.end(), 0);

  ObjectiveValue out;
  out.denom = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1);
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && index_[order_[stop]] == index_[order_[start]]) ++stop;
    // Every element already in the tree has a strictly smaller index value.
    for (std::size_t t = start; t < stop; ++t) {
      for (int r = y_rank_[order_[t]]; r > 0; r -= r & -r) {
        out.concordant += tree_[r];
      }
    }
    for (std::size_t t = start; t < stop; ++t) {
      for (int r = y_rank_[order_[t]] + 1; r <= num_ranks_; r += r & -r) {
        ++tree_[r];
      }
    }
    start = stop;
  }
  return out;
}

ObjectiveValue MrcEvaluator::EvaluateFree(std::span<const double> free) {
  for (std::size_t h = 0; h < free.size(); ++h) {
    beta_[d_.FreeColumn(h)] = free[h];
  }
  beta_[d_.normalized_index()] = d_.normalized_sign();
  return Evaluate(beta_);
}

RankScoreEvaluator::RankScoreEvaluator(const Dataset& d)
    : d_(d),
      y_rank_(d.n()),
      index_(d.n()),
      v_rank_(d.n()),
      order_(d.n()),
      sorted_(d.n()),
      tree_(d.n() + 1, 0),
      beta_(d.k()) {
  std::vector<double> levels(d.ys().begin(), d.ys().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (std::size_t i = 0; i < d.n(); ++i) {
    y_rank_[i] = static_cast<int>(
        std::lower_bound(levels.begin(), levels.end(), d.y(i)) -
        levels.begin());
  }
}

void RankScoreEvaluator::Add(int rank, int delta) {
  for (; rank < static_cast<int>(tree_.size()); rank += rank & -rank) {
    tree_[rank] += delta;
  }
}

int RankScoreEvaluator::Prefix(int rank) const {
  int total = 0;
  for (; rank > 0; rank -= rank & -rank) total += tree_[rank];
  return total;
}

// Pairs inside order_[lo, hi); leaves that range sorted by outcome rank.
std::int64_t RankScoreEvaluator::Count(int lo, int hi) {
  if (hi - lo <= 1) return 0;
  const int mid = lo + (hi - lo) / 2;
  std::int64_t total = Count(lo, mid) + Count(mid, hi);
  const auto y = [this](int t) { return y_rank_[order_[t]]; };
  const auto v = [this](int t) { return v_rank_[order_[t]]; };

  // Earlier observation has the larger outcome and the larger index.
  int p = mid;
  for (int t = hi - 1; t >= mid; --t) {
    while (p > lo && y(p - 1) > y(t)) Add(v(--p), 1);
    total += (mid - p) - Prefix(v(t));
  }
  for (int t = p; t < mid; ++t) Add(v(t), -1);

  // Earlier observation has an outcome no larger and an index no larger.
  int q = lo;
  for (int t = mid; t < hi; ++t) {
    while (q < mid && y(q) <= y(t)) Add(v(q++), 1);
    total += Prefix(v(t));
  }
  for (int t = lo; t < q; ++t) Add(v(t), -1);

  std::merge(order_.begin() + lo, order_.begin() + mid, order_.begin() + mid,
             order_.begin() + hi, sorted_.begin() + lo,
             [this](int a, int b) { return y_rank_[a] < y_rank_[b]; });
  std::copy(sorted_.begin() + lo, sorted_.begin() + hi, order_.begin() + lo);
  return total;
}

ObjectiveValue RankScoreEvaluator::Evaluate(std::span<const double> beta) {
  const std::size_t n = d_.n();
  for (std::size_t i = 0; i < n; ++i) index_[i] = Index(d_.x(i), beta);
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(),
            [this](int a, int b) { return index_[a] < index_[b]; });
  int rank = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t == 0 || index_[order_[t]] != index_[order_[t - 1]]) ++rank;
    v_rank_[order_[t]] = rank;
  }
  std::iota(order_.begin(), order_.end(), 0);
  ObjectiveValue out;
  out.denom =
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  out.concordant = Count(0, static_cast<int>(n));
  return out;
}

ObjectiveValue RankScoreEvaluator::EvaluateFree(std::span<const double> free) {
  for (std::size_t h = 0; h < free.size(); ++h) {
    beta_[d_.FreeColumn(h)] = free[h];
  }
  beta_[d_.normalized_index()] = d_.normalized_sign();
  return Evaluate(beta_);
}

}  // namespace mrcmip
