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

#include "mrcmip/best_subset.h"

#include <algorithm>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mrcmip/mip_model.h"

namespace mrcmip {
namespace {

// Enumerating more supports than this falls back to a short candidate list.
constexpr std::int64_t kMaxSupports = 500;

std::int64_t Binomial(int n, int r) {
  std::int64_t out = 1;
  for (int t = 1; t <= r; ++t) {
    out = out * (n - r + t) / t;
    if (out > kMaxSupports) return out;
  }
  return out;
}

void Combinations(int p, int s, std::vector<int>& current, int next,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == s) {
    out.push_back(current);
    return;
  }
  for (int h = next; h < p; ++h) {
    current.push_back(h);
    Combinations(p, s, current, h + 1, out);
    current.pop_back();
  }
}

// Columns of `d` restricted to the normalized regressor plus `support`
// (0-based candidate numbers).
absl::StatusOr<Dataset> Restrict(const Dataset& d,
                                 const std::vector<int>& support) {
  std::vector<std::size_t> columns;
  std::size_t normalized = 0;
  for (std::size_t c = 0, h = 0; c < d.k(); ++c) {
    if (c == d.normalized_index()) {
      normalized = columns.size();
      columns.push_back(c);
      continue;
    }
    if (std::find(support.begin(), support.end(), static_cast<int>(h)) !=
        support.end()) {
      columns.push_back(c);
    }
    ++h;
  }
  std::vector<double> x;
  x.reserve(d.n() * columns.size());
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t c : columns) x.push_back(d.x(i)[c]);
  }
  return Dataset::Create(std::vector<double>(d.ys().begin(), d.ys().end()),
                         std::move(x), columns.size(), normalized,
                         d.normalized_sign());
}

std::vector<std::vector<int>> CandidateSupports(const Dataset& eval,
                                                const SubsetSolution& fitted,
                                                const ParamBox& box, int s) {
  const int p = static_cast<int>(eval.num_free());
  std::vector<std::vector<int>> supports;
  if (Binomial(p, s) <= kMaxSupports) {
    std::vector<int> current;
    Combinations(p, s, current, 0, supports);
    return supports;
  }
  std::vector<int> fit;
  for (int h : fitted.support) fit.push_back(h - 1);
  while (static_cast<int>(fit.size()) < s) {
    for (int h = 0; h < p; ++h) {
      if (std::find(fit.begin(), fit.end(), h) == fit.end()) {
        fit.push_back(h);
        break;
      }
    }
  }
  std::sort(fit.begin(), fit.end());
  supports.push_back(fit);
  // The s largest least-squares slopes relative to the box width.
  const OlsStart ols = ComputeOlsStart(eval, box);
  const std::vector<double> free = eval.FreePart(ols.beta);
  std::vector<std::pair<double, int>> scaled;
  for (int h = 0; h < p; ++h) {
    const double width = std::max(box.upper(h) - box.lower(h), 1e-300);
    scaled.push_back({-std::abs(free[h]) / width, h});
  }
  std::sort(scaled.begin(), scaled.end());
  std::vector<int> top;
  for (int t = 0; t < s; ++t) top.push_back(scaled[t].second);
  std::sort(top.begin(), top.end());
  if (top != fit) supports.push_back(top);
  return supports;
}

}  // namespace

absl::StatusOr<SubsetSolution> FitBestSubset(const Dataset& train,
                                             int cardinality,
                                             const ParamBox& box,
                                             double epsilon,
                                             const BnbOptions& options) {
  auto model = BuildSubsetMip(train, box, cardinality, epsilon);
  if (!model.ok()) return model.status();
  auto mip = BranchAndBound(*model, options);
  if (!mip.ok()) return mip.status();
  if (mip->status == MipStatus::kInfeasible) {
    return absl::FailedPreconditionError("subset model has no feasible point");
  }
  SubsetSolution out;
  out.mip = *std::move(mip);
  out.beta = out.mip.solution.beta;
  for (std::size_t h = 0; h < train.num_free(); ++h) {
    if (out.beta[train.FreeColumn(h)] != 0.0) {
      out.support.push_back(static_cast<int>(h) + 1);
    }
  }
  auto score = RankPredictionScore(train, out.beta);
  if (!score.ok()) return score.status();
  out.score = *score;
  return out;
}

absl::StatusOr<std::vector<std::int64_t>> PredictRanks(
    std::span<const double> beta, std::span<const double> x) {
  const std::size_t k = beta.size();
  if (k == 0 || x.size() % k != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("prediction matrix with ", x.size(),
                     " entries does not have ", k, " columns"));
  }
  const std::size_t rows = x.size() / k;
  std::vector<double> index(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < k; ++c) index[r] += x[r * k + c] * beta[c];
  }
  std::vector<double> sorted = index;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::int64_t> ranks(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    ranks[r] = std::lower_bound(sorted.begin(), sorted.end(), index[r]) -
               sorted.begin();
  }
  return ranks;
}

absl::StatusOr<UnEstimate> EstimateUn(const SubsetSolution& fitted,
                                      int cardinality, const Dataset& eval,
                                      const ParamBox& box, double epsilon,
                                      const UnOptions& options) {
  const int p = static_cast<int>(eval.num_free());
  if (cardinality < 1 || cardinality > p) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cardinality ", cardinality, " outside [1, ", p, "]"));
  }
  if (fitted.beta.size() != eval.k()) {
    return absl::InvalidArgumentError(
        "fitted coefficients do not match the evaluation data");
  }
  if (box.dim() != eval.num_free()) {
    return absl::InvalidArgumentError("box dimension does not match data");
  }
  RankScoreEvaluator evaluator(eval);
  UnEstimate out;
  out.fitted_score = evaluator.Evaluate(fitted.beta);
  out.best_score = out.fitted_score;
  out.best_beta = fitted.beta;
  out.best_method = "fitted";

  const auto n = static_cast<std::int64_t>(eval.n());
  if (n * (n - 1) / 2 <= options.max_mip_pairs) {
    auto best = FitBestSubset(eval, cardinality, box, epsilon, options.bnb);
    if (!best.ok()) return best.status();
    if (best->score.concordant > out.best_score.concordant) {
      out.best_score = best->score;
      out.best_beta = best->beta;
    }
    out.best_method = "mip";
  } else {
    out.best_method = "support-search";
    std::mt19937_64 rng(options.seed);
    const std::vector<double> fitted_free = eval.FreePart(fitted.beta);
    for (const std::vector<int>& support :
         CandidateSupports(eval, fitted, box, cardinality)) {
      std::vector<double> lo, hi;
      for (int h : support) {
        lo.push_back(box.lower(h));
        hi.push_back(box.upper(h));
      }
      auto sub_box = ParamBox::Create(lo, hi);
      if (!sub_box.ok()) return sub_box.status();
      std::vector<double> free(p, 0.0);
      const FreeObjective objective = [&](std::span<const double> z) {
        for (std::size_t t = 0; t < support.size(); ++t) free[support[t]] = z[t];
        return evaluator.EvaluateFree(free).value();
      };

      std::vector<std::vector<double>> starts;
      std::vector<double> from_fit;
      for (int h : support) from_fit.push_back(fitted_free[h]);
      starts.push_back(from_fit);
      auto restricted = Restrict(eval, support);
      if (!restricted.ok()) return restricted.status();
      starts.push_back(restricted->FreePart(
          ComputeOlsStart(*restricted, *sub_box).beta));
      while (static_cast<int>(starts.size()) < options.starts_per_support) {
        std::vector<double> z(support.size());
        for (std::size_t t = 0; t < z.size(); ++t) {
          z[t] = std::uniform_real_distribution<double>(lo[t], hi[t])(rng);
        }
        starts.push_back(std::move(z));
      }
      starts.resize(std::max(1, options.starts_per_support));
      for (const auto& start : starts) {
        const SearchResult r =
            NelderMead(objective, start, *sub_box, options.search);
        std::fill(free.begin(), free.end(), 0.0);
        for (std::size_t t = 0; t < support.size(); ++t) {
          free[support[t]] = r.point[t];
        }
        const std::vector<double> beta = eval.ExpandBeta(free);
        const ObjectiveValue score = evaluator.Evaluate(beta);
        if (score.concordant > out.best_score.concordant) {
          out.best_score = score;
          out.best_beta = beta;
        }
      }
    }
  }
  out.u_n = std::max(out.best_score.value() - out.fitted_score.value(), 0.0);
  return out;
}

}  // namespace mrcmip
