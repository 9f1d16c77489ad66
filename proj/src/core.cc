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

#include "mrcmip/core.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mrcmip {

absl::StatusOr<Dataset> Dataset::Create(std::vector<double> y,
                                        std::vector<double> x, std::size_t k,
                                        std::size_t normalized_index,
                                        double normalized_sign) {
  if (y.size() < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset needs at least 2 observations, got ", y.size()));
  }
  if (k < 1) {
    return absl::InvalidArgumentError("dataset needs at least one regressor");
  }
  if (x.size() != y.size() * k) {
    return absl::InvalidArgumentError(
        absl::StrCat("regressor matrix has ", x.size(), " entries, expected ",
                     y.size(), " x ", k));
  }
  if (normalized_index >= k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "normalized index ", normalized_index, " out of range [0, ", k, ")"));
  }
  if (normalized_sign != 1.0 && normalized_sign != -1.0) {
    return absl::InvalidArgumentError("normalized sign must be +1 or -1");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("non-finite outcome at row ", i + 1));
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (!std::isfinite(x[i * k + c])) {
        return absl::InvalidArgumentError(absl::StrCat(
            "non-finite regressor at row ", i + 1, ", column ", c + 2));
      }
    }
  }
  Dataset d;
  d.y_ = std::move(y);
  d.x_ = std::move(x);
  d.k_ = k;
  d.normalized_index_ = normalized_index;
  d.normalized_sign_ = normalized_sign;
  return d;
}

std::vector<double> Dataset::ExpandBeta(std::span<const double> free) const {
  std::vector<double> beta(k_);
  for (std::size_t h = 0; h + 1 < k_; ++h) beta[FreeColumn(h)] = free[h];
  beta[normalized_index_] = normalized_sign_;
  return beta;
}

std::vector<double> Dataset::FreePart(std::span<const double> beta) const {
  std::vector<double> free(num_free());
  for (std::size_t h = 0; h < free.size(); ++h) free[h] = beta[FreeColumn(h)];
  return free;
}

absl::StatusOr<Dataset> Dataset::WithNormalization(
    std::size_t normalized_index, double normalized_sign) const {
  return Create(y_, x_, k_, normalized_index, normalized_sign);
}

absl::StatusOr<Dataset> ValidateDataset(
    const std::vector<std::vector<double>>& rows, std::size_t normalized_index,
    double normalized_sign) {
  if (rows.size() < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset needs at least 2 rows, got ", rows.size()));
  }
  const std::size_t width = rows.front().size();
  if (width < 2) {
    return absl::InvalidArgumentError(
        "rows need an outcome column and at least one regressor column");
  }
  std::vector<double> y;
  std::vector<double> x;
  y.reserve(rows.size());
  x.reserve(rows.size() * (width - 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", r + 1, " has ", rows[r].size(), " cells, expected ", width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (!std::isfinite(rows[r][c])) {
        return absl::InvalidArgumentError(absl::StrCat(
            "non-finite value at row ", r + 1, ", column ", c + 1));
      }
    }
    y.push_back(rows[r][0]);
    x.insert(x.end(), rows[r].begin() + 1, rows[r].end());
  }
  return Dataset::Create(std::move(y), std::move(x), width - 1,
                         normalized_index, normalized_sign);
}

absl::StatusOr<ParamBox> ParamBox::Create(std::vector<double> lower,
                                          std::vector<double> upper) {
  if (lower.size() != upper.size()) {
    return absl::InvalidArgumentError("box bound vectors differ in length");
  }
  for (std::size_t h = 0; h < lower.size(); ++h) {
    if (!std::isfinite(lower[h]) || !std::isfinite(upper[h])) {
      return absl::InvalidArgumentError(
          absl::StrCat("box bound ", h, " is not finite"));
    }
    if (lower[h] > upper[h]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "box bound ", h, ": lower ", lower[h], " > upper ", upper[h]));
    }
  }
  ParamBox box;
  box.lower_ = std::move(lower);
  box.upper_ = std::move(upper);
  return box;
}

absl::StatusOr<ParamBox> ParamBox::Uniform(std::size_t dim, double lo,
                                           double hi) {
  return Create(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

bool ParamBox::Contains(std::span<const double> free, double tol) const {
  if (free.size() != dim()) return false;
  for (std::size_t h = 0; h < dim(); ++h) {
    if (free[h] < lower_[h] - tol || free[h] > upper_[h] + tol) return false;
  }
  return true;
}

std::vector<double> ParamBox::Midpoint() const {
  std::vector<double> mid(dim());
  for (std::size_t h = 0; h < dim(); ++h) {
    mid[h] = 0.5 * (lower_[h] + upper_[h]);
  }
  return mid;
}

void ParamBox::Clip(std::span<double> free) const {
  for (std::size_t h = 0; h < dim(); ++h) {
    free[h] = std::clamp(free[h], lower_[h], upper_[h]);
  }
}

namespace {

void AppendDiff(const Dataset& d, std::size_t i, std::size_t j,
                std::vector<double>& out) {
  const auto xi = d.x(i);
  const auto xj = d.x(j);
  for (std::size_t c = 0; c < d.k(); ++c) out.push_back(xi[c] - xj[c]);
}

PairSet EmptyPairSet(const Dataset& d) {
  PairSet set;
  set.k = d.k();
  set.normalized_index = d.normalized_index();
  set.normalized_sign = d.normalized_sign();
  return set;
}

}  // namespace

PairSet BuildPairs(const Dataset& d, bool drop_ties) {
  PairSet set = EmptyPairSet(d);
  const auto n = static_cast<std::int64_t>(d.n());
  set.n_pairs_total = n * (n - 1);
  set.denom = n * (n - 1);
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.n(); ++j) {
      if (i == j) continue;
      const bool greater = d.y(i) > d.y(j);
      if (drop_ties && !greater) continue;
      set.pairs.push_back({static_cast<std::uint32_t>(i),
                           static_cast<std::uint32_t>(j), greater ? 1 : 0,
                           greater});
      AppendDiff(d, i, j, set.diffs);
    }
  }
  return set;
}

PairSet BuildUnorderedPairs(const Dataset& d) {
  PairSet set = EmptyPairSet(d);
  const auto n = static_cast<std::int64_t>(d.n());
  set.n_pairs_total = n * (n - 1) / 2;
  set.denom = n * (n - 1) / 2;
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = i + 1; j < d.n(); ++j) {
      const bool greater = d.y(i) > d.y(j);
      set.pairs.push_back({static_cast<std::uint32_t>(i),
                           static_cast<std::uint32_t>(j), greater ? 1 : -1,
                           greater});
      AppendDiff(d, i, j, set.diffs);
    }
  }
  return set;
}

std::string MipStatusName(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kTimeLimit:
      return "time_limit";
    case MipStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

double RelativeGapPercent(double dual_bound, double objective) {
  return 100.0 * (dual_bound - objective) /
         std::max(std::abs(objective), kGapFloor);
}

std::uint64_t Fingerprint(const Dataset& d) {
  std::uint64_t hash = 14695981039346656037ULL;
  auto mix = [&hash](std::span<const double> values) {
    for (double v : values) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 1099511628211ULL;
      }
    }
  };
  mix(d.ys());
  mix(d.xs());
  return hash;
}

}  // namespace mrcmip
