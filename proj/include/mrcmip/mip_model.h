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

// Mixed integer models for rank correlation estimation.
//
// Every pair binary d is tied to a linear index difference
//
//   v(beta) = constant + coeffs' beta
//
// through the big-M rows
//
//   (d - 1) M + eps <= v(beta) <= d M,
//
// so that d = 1 forces v >= eps and d = 0 forces v <= 0. The objective is
// (objective_constant + sum_b weight_b * binary_b) / objective_denom with
// integer weights, which keeps every objective value an exact ratio.
//
// Best-subset models add switch binaries e_h with
// lower_h e_h <= beta_h <= upper_h e_h and a cardinality row sum e_h <= s.

#ifndef MRCMIP_MIP_MODEL_H_
#define MRCMIP_MIP_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "mrcmip/core.h"
#include "mrcmip/lp.h"

namespace mrcmip {

inline constexpr double kDefaultEpsilon = 1e-6;

struct IndicatorLink {
  int binary = 0;
  double constant = 0.0;
  double big_m = 0.0;
};

struct SwitchLink {
  int binary = 0;
  int continuous = 0;
};

// How the full coefficient vector is rebuilt from the continuous variables.
struct BetaLayout {
  std::size_t full_dim = 0;
  std::size_t normalized_index = 0;
  double normalized_sign = 1.0;
};

struct MipModel {
  std::vector<std::string> continuous_names;
  std::vector<double> continuous_lower;
  std::vector<double> continuous_upper;

  std::vector<std::string> binary_names;
  std::vector<std::int64_t> binary_weight;

  std::int64_t objective_constant = 0;
  std::int64_t objective_denom = 1;
  double epsilon = kDefaultEpsilon;

  std::vector<IndicatorLink> links;
  // Row-major links.size() x num_continuous() coefficient matrix.
  std::vector<double> link_coeffs;
  std::vector<SwitchLink> switches;
  std::optional<int> cardinality;
  std::vector<int> cardinality_binaries;

  BetaLayout layout;

  int num_continuous() const {
    return static_cast<int>(continuous_names.size());
  }
  int num_binaries() const { return static_cast<int>(binary_names.size()); }
  std::span<const double> coeffs(std::size_t link) const {
    const std::size_t q = continuous_names.size();
    return {link_coeffs.data() + link * q, q};
  }
  // v(beta) for link `link` at continuous values `beta`.
  double LinkValue(std::size_t link, std::span<const double> beta) const;

  // The explicit constraint rows over [continuous | binary] columns: two per
  // link, two per switch, and one cardinality row.
  int NumRows() const;
  std::vector<SparseRow> Rows(std::vector<double>* rhs) const;

  // LP relaxation in objective-numerator units: variables are the continuous
  // block then the binaries in [0, 1]; `fixed` (when non-empty) pins binaries
  // with entries 0/1 and leaves -1 free. The LP optimum plus
  // objective_constant, over objective_denom, bounds the MIP.
  LpModel Relaxation(std::span<const std::int8_t> fixed = {}) const;

  // Objective numerator of a binary assignment.
  std::int64_t Numerator(std::span<const std::int8_t> binaries) const;
  double Value(std::int64_t numerator) const {
    return static_cast<double>(numerator) /
           static_cast<double>(objective_denom);
  }

  // Expands continuous values into the full coefficient vector.
  std::vector<double> FullBeta(std::span<const double> beta) const;
};

// M = max(|hi|, |lo|) + epsilon where [lo, hi] is the exact range of
// fixed_term + free_diff' beta over the box.
double BigM(std::span<const double> free_diff, const ParamBox& box,
            double fixed_term, double epsilon);

enum class BigMMode { kPerPair, kGlobalMax };

// Pairwise indicator form: one binary per informative pair, weight +1,
// objective denominator n(n-1). `pairs` must have been built with tie dropping.
absl::StatusOr<MipModel> BuildMrcMip(const PairSet& pairs, const ParamBox& box,
                                     double epsilon = kDefaultEpsilon,
                                     BigMMode mode = BigMMode::kPerPair);

// Cardinality-constrained rank prediction model over unordered pairs with
// ties retained. The normalized regressor of `d` is the included one; its
// coefficient is `d.normalized_sign()`.
absl::StatusOr<MipModel> BuildSubsetMip(const Dataset& d, const ParamBox& box,
                                        int cardinality,
                                        double epsilon = kDefaultEpsilon);

}  // namespace mrcmip

#endif  // MRCMIP_MIP_MODEL_H_
