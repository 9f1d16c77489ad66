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

#include <cmath>
#include <limits>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace mrcmip {
namespace {

using ::testing::ElementsAre;

std::vector<double> AsVector(std::span<const double> s) {
  return {s.begin(), s.end()};
}
using ::testing::HasSubstr;

TEST(ValidateDatasetTest, SmallExampleRows) {
  auto d = ValidateDataset({{1, 0, 2}, {0, 1, 0}, {0, 1, 1}, {0, 0.5, 2}}, 0,
                           1.0);
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_EQ(d->n(), 4);
  EXPECT_EQ(d->k(), 2);
  EXPECT_EQ(d->num_free(), 1);
  EXPECT_THAT(AsVector(d->x(3)), ElementsAre(0.5, 2.0));
}

TEST(ValidateDatasetTest, SingleRowIsRejected) {
  auto d = ValidateDataset({{1, 0, 2}}, 0, 1.0);
  EXPECT_EQ(d.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(d.status().message(), HasSubstr("at least 2 rows"));
}

TEST(ValidateDatasetTest, NanIsRejected) {
  auto d = ValidateDataset(
      {{1, 0, 2}, {0, std::numeric_limits<double>::quiet_NaN(), 0}}, 0, 1.0);
  EXPECT_EQ(d.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(d.status().message(), HasSubstr("row 2, column 2"));
}

TEST(ValidateDatasetTest, RaggedRowsAndBadNormalization) {
  EXPECT_FALSE(ValidateDataset({{1, 0, 2}, {0, 1}}, 0, 1.0).ok());
  EXPECT_FALSE(ValidateDataset({{1, 0, 2}, {0, 1, 1}}, 2, 1.0).ok());
  EXPECT_FALSE(ValidateDataset({{1, 0, 2}, {0, 1, 1}}, 0, 0.5).ok());
  EXPECT_TRUE(ValidateDataset({{1, 0, 2}, {0, 1, 1}}, 1, -1.0).ok());
}

TEST(DatasetTest, ExpandAndFreePartRoundTrip) {
  auto d = Dataset::Create({0, 1}, {1, 2, 3, 4, 5, 6}, 3, 1, -1.0).value();
  const std::vector<double> beta = d.ExpandBeta(std::vector{0.5, 7.0});
  EXPECT_THAT(beta, ElementsAre(0.5, -1.0, 7.0));
  EXPECT_THAT(d.FreePart(beta), ElementsAre(0.5, 7.0));
  EXPECT_EQ(d.FreeColumn(0), 0);
  EXPECT_EQ(d.FreeColumn(1), 2);
}

TEST(ParamBoxTest, Validation) {
  EXPECT_FALSE(ParamBox::Create({1.0}, {0.0}).ok());
  EXPECT_FALSE(
      ParamBox::Create({0.0}, {std::numeric_limits<double>::infinity()}).ok());
  EXPECT_FALSE(ParamBox::Create({0.0, 1.0}, {1.0}).ok());
  auto box = ParamBox::Uniform(2, -10, 10).value();
  EXPECT_TRUE(box.Contains(std::vector{-10.0, 10.0}));
  EXPECT_FALSE(box.Contains(std::vector{-10.5, 0.0}));
  std::vector<double> v = {-11.0, 3.0};
  box.Clip(v);
  EXPECT_THAT(v, ElementsAre(-10.0, 3.0));
  EXPECT_THAT(box.Midpoint(), ElementsAre(0.0, 0.0));
}

TEST(BuildPairsTest, SmallExampleKeepsThreeInformativePairs) {
  const PairSet p = BuildPairs(testing::SmallExample(), /*drop_ties=*/true);
  ASSERT_EQ(p.size(), 3);
  EXPECT_EQ(p.denom, 12);
  EXPECT_EQ(p.n_pairs_total, 12);
  EXPECT_EQ(p.pairs[0].i, 0);
  EXPECT_EQ(p.pairs[0].j, 1);
  EXPECT_THAT(AsVector(p.diff(0)), ElementsAre(-1.0, 2.0));
  EXPECT_THAT(AsVector(p.diff(1)), ElementsAre(-1.0, 1.0));
  EXPECT_THAT(AsVector(p.diff(2)), ElementsAre(-0.5, 0.0));
}

TEST(BuildPairsTest, AllTiedGivesNoPairs) {
  auto d = Dataset::Create({2, 2, 2}, {1, 2, 3, 4, 5, 6}, 2, 0, 1.0).value();
  EXPECT_EQ(BuildPairs(d, true).size(), 0);
}

TEST(BuildPairsTest, OrderedPairsWithoutDropping) {
  auto d = Dataset::Create({1, 2, 3}, {1, 2, 3, 4, 5, 6}, 2, 0, 1.0).value();
  const PairSet p = BuildPairs(d, false);
  EXPECT_EQ(p.size(), 6);
  EXPECT_EQ(p.denom, 6);
}

TEST(BuildPairsTest, UnorderedPairsKeepTies) {
  const PairSet p = BuildUnorderedPairs(testing::SmallExample());
  EXPECT_EQ(p.size(), 6);
  EXPECT_EQ(p.denom, 6);
  int positive = 0;
  for (const Pair& pair : p.pairs) {
    EXPECT_LT(pair.i, pair.j);
    positive += pair.weight == 1;
  }
  EXPECT_EQ(positive, 3);
}

// Property: the number of kept pairs is the double-loop count of y_i > y_j,
// and x_ij + x_j reproduces x_i bit for bit.
TEST(BuildPairsTest, CountsAndDifferencesOnRandomData) {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const int k = 1 + static_cast<int>(rng() % 4);
    const Dataset d = testing::RandomDataset(rng, n, k, trial % 2 ? 3 : 0);
    const PairSet p = BuildPairs(d, true);
    std::size_t expected = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) expected += d.y(i) > d.y(j);
    }
    ASSERT_EQ(p.size(), expected);
    for (std::size_t t = 0; t < p.size(); ++t) {
      const Pair& pair = p.pairs[t];
      ASSERT_GT(d.y(pair.i), d.y(pair.j));
      for (int c = 0; c < k; ++c) {
        ASSERT_EQ(d.x(pair.i)[c] - d.x(pair.j)[c], p.diff(t)[c]);
      }
    }
  }
}

TEST(GapTest, RelativeGap) {
  EXPECT_DOUBLE_EQ(RelativeGapPercent(0.5, 0.25), 100.0);
  EXPECT_DOUBLE_EQ(RelativeGapPercent(0.25, 0.25), 0.0);
  EXPECT_GT(RelativeGapPercent(0.1, 0.0), 1e6);
}

TEST(FingerprintTest, SensitiveToData) {
  auto a = testing::SmallExample();
  auto b = Dataset::Create({1, 0, 0, 0}, {0, 2, 1, 0, 1, 1, 0.5, 2.5}, 2, 0,
                           1.0)
               .value();
  EXPECT_EQ(Fingerprint(a), Fingerprint(testing::SmallExample()));
  EXPECT_NE(Fingerprint(a), Fingerprint(b));
}

TEST(MipStatusTest, Names) {
  EXPECT_EQ(MipStatusName(MipStatus::kOptimal), "optimal");
  EXPECT_EQ(MipStatusName(MipStatus::kTimeLimit), "time_limit");
  EXPECT_EQ(MipStatusName(MipStatus::kInfeasible), "infeasible");
}

}  // namespace
}  // namespace mrcmip
