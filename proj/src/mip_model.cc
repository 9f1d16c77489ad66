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

#include "mrcmip/mip_model.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mrcmip {

double MipModel::LinkValue(std::size_t link,
                           std::span<const double> beta) const {
  double v = links[link].constant;
  const auto a = coeffs(link);
  for (std::size_t h = 0; h < a.size(); ++h) v += a[h] * beta[h];
  return v;
}

int MipModel::NumRows() const {
  return 2 * static_cast<int>(links.size()) +
         2 * static_cast<int>(switches.size()) + (cardinality ? 1 : 0);
}

std::vector<SparseRow> MipModel::Rows(std::vector<double>* rhs) const {
  const int q = num_continuous();
  std::vector<SparseRow> rows;
  rows.reserve(NumRows());
  rhs->clear();
  for (std::size_t l = 0; l < links.size(); ++l) {
    const IndicatorLink& link = links[l];
    const auto a = coeffs(l);
    // M d - a'beta <= constant + M - eps
    SparseRow lower;
    // a'beta - M d <= -constant
    SparseRow upper;
    for (int h = 0; h < q; ++h) {
      if (a[h] == 0.0) continue;
      lower.index.push_back(h);
      lower.value.push_back(-a[h]);
      upper.index.push_back(h);
      upper.value.push_back(a[h]);
    }
    lower.index.push_back(q + link.binary);
    lower.value.push_back(link.big_m);
    upper.index.push_back(q + link.binary);
    upper.value.push_back(-link.big_m);
    rows.push_back(std::move(lower));
    rhs->push_back(link.constant + link.big_m - epsilon);
    rows.push_back(std::move(upper));
    rhs->push_back(-link.constant);
  }
  for (const SwitchLink& sw : switches) {
    rows.push_back({{sw.continuous, q + sw.binary},
                    {1.0, -continuous_upper[sw.continuous]}});
    rhs->push_back(0.0);
    rows.push_back({{sw.continuous, q + sw.binary},
                    {-1.0, continuous_lower[sw.continuous]}});
    rhs->push_back(0.0);
  }
  if (cardinality) {
    SparseRow row;
    for (int b : cardinality_binaries) {
      row.index.push_back(q + b);
      row.value.push_back(1.0);
    }
    rows.push_back(std::move(row));
    rhs->push_back(*cardinality);
  }
  return rows;
}

LpModel MipModel::Relaxation(std::span<const std::int8_t> fixed) const {
  LpModel lp;
  for (int h = 0; h < num_continuous(); ++h) {
    lp.AddVariable(continuous_lower[h], continuous_upper[h], 0.0);
  }
  for (int b = 0; b < num_binaries(); ++b) {
    double lo = 0.0;
    double hi = 1.0;
    if (!fixed.empty() && fixed[b] >= 0) lo = hi = fixed[b];
    lp.AddVariable(lo, hi, static_cast<double>(binary_weight[b]));
  }
  lp.rows = Rows(&lp.rhs);
  return lp;
}

std::int64_t MipModel::Numerator(
    std::span<const std::int8_t> binaries) const {
  std::int64_t total = objective_constant;
  for (int b = 0; b < num_binaries(); ++b) {
    if (binaries[b] != 0) total += binary_weight[b];
  }
  return total;
}

std::vector<double> MipModel::FullBeta(std::span<const double> beta) const {
  std::vector<double> full(layout.full_dim);
  std::size_t h = 0;
  for (std::size_t c = 0; c < layout.full_dim; ++c) {
    full[c] = c == layout.normalized_index ? layout.normalized_sign
                                           : beta[h++];
  }
  return full;
}

double BigM(std::span<const double> free_diff, const ParamBox& box,
            double fixed_term, double epsilon) {
  double hi = fixed_term;
  double lo = fixed_term;
  for (std::size_t h = 0; h < free_diff.size(); ++h) {
    const double a = free_diff[h] * box.lower(h);
    const double b = free_diff[h] * box.upper(h);
    hi += std::max(a, b);
    lo += std::min(a, b);
  }
  return std::max(std::abs(hi), std::abs(lo)) + epsilon;
}

namespace {

void SetupContinuous(const ParamBox& box, std::size_t k,
                     std::size_t normalized_index, double normalized_sign,
                     MipModel& model) {
  model.layout = {k, normalized_index, normalized_sign};
  for (std::size_t h = 0; h < box.dim(); ++h) {
    const std::size_t column = h < normalized_index ? h : h + 1;
    model.continuous_names.push_back(absl::StrCat("beta", column + 1));
    model.continuous_lower.push_back(box.lower(h));
    model.continuous_upper.push_back(box.upper(h));
  }
}

// Splits a full difference vector into the fixed term and free part.
double SplitDiff(std::span<const double> diff, std::size_t normalized_index,
                 double normalized_sign, std::vector<double>& free) {
  free.clear();
  for (std::size_t c = 0; c < diff.size(); ++c) {
    if (c != normalized_index) free.push_back(diff[c]);
  }
  return normalized_sign * diff[normalized_index];
}

}  // namespace

absl::StatusOr<MipModel> BuildMrcMip(const PairSet& pairs, const ParamBox& box,
                                     double epsilon, BigMMode mode) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (box.dim() + 1 != pairs.k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "box has ", box.dim(), " coefficients, expected ", pairs.k - 1));
  }
  if (pairs.size() == 0) {
    return absl::FailedPreconditionError(
        "degenerate model: no informative pairs (all outcomes tied), the "
        "objective is constant 0");
  }
  MipModel model;
  model.epsilon = epsilon;
  model.objective_denom = pairs.denom;
  SetupContinuous(box, pairs.k, pairs.normalized_index, pairs.normalized_sign,
                  model);
  std::vector<double> free;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Pair& pair = pairs.pairs[p];
    if (!pair.y_greater) {
      return absl::InvalidArgumentError(
          "pair set must be built with tie dropping");
    }
    const double fixed = SplitDiff(pairs.diff(p), pairs.normalized_index,
                                   pairs.normalized_sign, free);
    const int b = model.num_binaries();
    model.binary_names.push_back(
        absl::StrCat("d_", pair.i + 1, "_", pair.j + 1));
    model.binary_weight.push_back(1);
    model.links.push_back({b, fixed, BigM(free, box, fixed, epsilon)});
    model.link_coeffs.insert(model.link_coeffs.end(), free.begin(),
                             free.end());
  }
  if (mode == BigMMode::kGlobalMax) {
    double m_max = 0.0;
    for (const auto& link : model.links) m_max = std::max(m_max, link.big_m);
    for (auto& link : model.links) link.big_m = m_max;
  }
  return model;
}

absl::StatusOr<MipModel> BuildSubsetMip(const Dataset& d, const ParamBox& box,
                                        int cardinality, double epsilon) {
  const int p = static_cast<int>(d.num_free());
  if (cardinality < 1 || cardinality > p) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cardinality ", cardinality, " outside [1, ", p, "]"));
  }
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (box.dim() != d.num_free()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "box has ", box.dim(), " coefficients, expected ", d.num_free()));
  }
  const PairSet pairs = BuildUnorderedPairs(d);
  MipModel model;
  model.epsilon = epsilon;
  model.objective_denom = pairs.denom;
  SetupContinuous(box, d.k(), d.normalized_index(), d.normalized_sign(),
                  model);
  std::vector<double> free;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const Pair& pair = pairs.pairs[q];
    const double fixed = SplitDiff(pairs.diff(q), pairs.normalized_index,
                                   pairs.normalized_sign, free);
    const int b = model.num_binaries();
    model.binary_names.push_back(
        absl::StrCat("d_", pair.i + 1, "_", pair.j + 1));
    // (1 - 1{y_i > y_j}) + (2 * 1{y_i > y_j} - 1) d
    model.binary_weight.push_back(pair.weight);
    if (!pair.y_greater) ++model.objective_constant;
    model.links.push_back({b, fixed, BigM(free, box, fixed, epsilon)});
    model.link_coeffs.insert(model.link_coeffs.end(), free.begin(),
                             free.end());
  }
  for (int h = 0; h < p; ++h) {
    const int b = model.num_binaries();
    model.binary_names.push_back(
        absl::StrCat("e", d.FreeColumn(h) + 1));
    model.binary_weight.push_back(0);
    model.switches.push_back({b, h});
    model.cardinality_binaries.push_back(b);
  }
  model.cardinality = cardinality;
  return model;
}

}  // namespace mrcmip
