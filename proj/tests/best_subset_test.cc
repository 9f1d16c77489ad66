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

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "mrcmip/objective.h"
#include "test_util.h"

namespace mrcmip {
namespace {

using ::testing::ElementsAre;

constexpr double kEps = 1e-6;

// y = 1{x'beta + e > 0} with N(0, 1) regressors.
Dataset Planted(std::mt19937_64& rng, int n, const std::vector<double>& beta,
                double noise) {
  std::normal_distribution<double> normal;
  const int k = static_cast<int>(beta.size());
  std::vector<double> x(static_cast<std::size_t>(n) * k), y(n);
  for (int i = 0; i < n; ++i) {
    double v = 0.0;
    for (int c = 0; c < k; ++c) {
      x[i * k + c] = normal(rng);
      v += x[i * k + c] * beta[c];
    }
    y[i] = v + noise * normal(rng) > 0.0;
  }
  return Dataset::Create(y, x, k, 0, 1.0).value();
}

TEST(PredictRanksTest, Examples) {
  const Dataset d = testing::SmallExample();
  auto r = PredictRanks(std::vector{1.0, 2.0}, d.xs());
  ASSERT_TRUE(r.ok());
  EXPECT_THAT(*r, ElementsAre(2, 0, 1, 3));
  EXPECT_THAT(*PredictRanks(std::vector{1.0}, std::vector{3.0, 1.0, 2.0}),
              ElementsAre(2, 0, 1));
  EXPECT_THAT(*PredictRanks(std::vector{1.0, 1.0},
                            std::vector{1.0, 2.0, 1.0, 2.0, 1.0, 2.0}),
              ElementsAre(0, 0, 0));
  EXPECT_FALSE(PredictRanks(std::vector{1.0, 1.0}, std::vector{1.0}).ok());
}

TEST(FitBestSubsetTest, SupportAndScoreAreConsistent) {
  std::mt19937_64 rng(1);
  const Dataset d = Planted(rng, 20, {1.0, 2.0, 0.0}, 0.25);
  const ParamBox box = ParamBox::Uniform(2, -10, 10).value();
  auto fit = FitBestSubset(d, 1, box, kEps, BnbOptions{});
  ASSERT_TRUE(fit.ok()) << fit.status();
  EXPECT_EQ(fit->mip.status, MipStatus::kOptimal);
  EXPECT_THAT(fit->support, ElementsAre(1));
  EXPECT_EQ(fit->beta[2], 0.0);
  EXPECT_EQ(fit->score.concordant, testing::CountAgreements(d, fit->beta));
  EXPECT_EQ(fit->score.concordant, fit->mip.numerator);
}

TEST(FitBestSubsetTest, FullCardinalityMatchesUnconstrainedOracle) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 7, 2, 3);
    const ParamBox box = ParamBox::Uniform(1, -5, 5).value();
    auto fit = FitBestSubset(d, 1, box, kEps, BnbOptions{}).value();
    std::int64_t best = 0;
    for (double b : testing::CriticalValues(d, -5, 5, true)) {
      best = std::max(best,
                      testing::CountAgreements(d, d.ExpandBeta(std::vector{b})));
    }
    EXPECT_EQ(fit.score.concordant, best);
  }
}

TEST(FitBestSubsetTest, CardinalityMonotone) {
  std::mt19937_64 rng(3);
  const Dataset d = testing::RandomDataset(rng, 9, 4, 2);
  const ParamBox box = ParamBox::Uniform(3, -5, 5).value();
  std::int64_t previous = -1;
  for (int s = 1; s <= 3; ++s) {
    auto fit = FitBestSubset(d, s, box, kEps, BnbOptions{}).value();
    EXPECT_LE(static_cast<int>(fit.support.size()), s);
    EXPECT_GE(fit.score.concordant, previous);
    previous = fit.score.concordant;
  }
}

TEST(FitBestSubsetTest, RejectsZeroCardinality) {
  const ParamBox box = ParamBox::Uniform(1, -5, 5).value();
  EXPECT_FALSE(FitBestSubset(testing::SmallExample(), 0, box, kEps, {}).ok());
}

TEST(EstimateUnTest, InSampleIsZero) {
  std::mt19937_64 rng(4);
  const Dataset d = Planted(rng, 15, {1.0, 1.0, 0.0}, 0.25);
  const ParamBox box = ParamBox::Uniform(2, -10, 10).value();
  auto fit = FitBestSubset(d, 1, box, kEps, BnbOptions{}).value();
  auto u = EstimateUn(fit, 1, d, box, kEps, UnOptions{});
  ASSERT_TRUE(u.ok()) << u.status();
  EXPECT_EQ(u->u_n, 0.0);
  EXPECT_EQ(u->best_method, "mip");
}

TEST(EstimateUnTest, NonNegativeWithSupportSearch) {
  std::mt19937_64 rng(5);
  const Dataset train = Planted(rng, 15, {1.0, 1.0, 0.0, 0.0}, 0.25);
  const Dataset eval = Planted(rng, 300, {1.0, 1.0, 0.0, 0.0}, 0.25);
  const ParamBox box = ParamBox::Uniform(3, -10, 10).value();
  auto fit = FitBestSubset(train, 2, box, kEps, BnbOptions{}).value();
  UnOptions o;
  o.max_mip_pairs = 100;
  auto u = EstimateUn(fit, 2, eval, box, kEps, o);
  ASSERT_TRUE(u.ok()) << u.status();
  EXPECT_EQ(u->best_method, "support-search");
  EXPECT_GE(u->u_n, 0.0);
  EXPECT_GE(u->best_score.concordant, u->fitted_score.concordant);
  EXPECT_EQ(u->fitted_score.concordant,
            testing::CountAgreements(eval, fit.beta));
  EXPECT_EQ(u->best_score.concordant,
            testing::CountAgreements(eval, u->best_beta));
}

TEST(EstimateUnTest, DimensionChecks) {
  const ParamBox box = ParamBox::Uniform(1, -5, 5).value();
  auto fit = FitBestSubset(testing::SmallExample(), 1, box, kEps, {}).value();
  std::mt19937_64 rng(6);
  const Dataset wide = testing::RandomDataset(rng, 10, 3, 2);
  EXPECT_FALSE(EstimateUn(fit, 1, wide, box, kEps, {}).ok());
  EXPECT_FALSE(EstimateUn(fit, 2, testing::SmallExample(), box, kEps, {}).ok());
}

}  // namespace
}  // namespace mrcmip
