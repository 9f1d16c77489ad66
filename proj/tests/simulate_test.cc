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

#include "mrcmip/simulate.h"

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace mrcmip {
namespace {

Design Small(Family family, int n, std::uint64_t seed) {
  Design d;
  d.family = family;
  d.n = n;
  d.k = 2;
  d.seed = seed;
  return d;
}

TEST(GenerateTest, DeterministicBySeed) {
  const Design design = Small(Family::kBinary, 400, 9);
  const Dataset a = GenBinary(design).value();
  const Dataset b = GenBinary(design).value();
  EXPECT_EQ(Fingerprint(a), Fingerprint(b));
  Design other = design;
  other.seed = 10;
  EXPECT_NE(Fingerprint(a), Fingerprint(GenBinary(other).value()));
}

TEST(GenerateTest, BinaryBalance) {
  const Dataset d = GenBinary(Small(Family::kBinary, 10000, 1)).value();
  double mean = 0.0;
  for (double y : d.ys()) {
    EXPECT_TRUE(y == 0.0 || y == 1.0);
    mean += y;
  }
  EXPECT_NEAR(mean / 10000.0, 0.5, 0.05);
  EXPECT_EQ(d.normalized_index(), 0);
  EXPECT_EQ(d.normalized_sign(), 1.0);
}

TEST(GenerateTest, TinyNoiseMatchesNoiselessRule) {
  Design design = Small(Family::kBinary, 500, 2);
  design.noise_sd = 1e-12;
  const Dataset d = GenBinary(design).value();
  int mismatches = 0;
  for (std::size_t i = 0; i < d.n(); ++i) {
    const double index = d.x(i)[0] + d.x(i)[1];
    if (std::abs(index) > 1e-9) mismatches += (index > 0) != (d.y(i) == 1.0);
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(GenerateTest, CensoredAtomAtZero) {
  const Dataset d = GenCensored(Small(Family::kCensored, 10000, 1)).value();
  int zeros = 0;
  for (double y : d.ys()) {
    EXPECT_GE(y, 0.0);
    zeros += y == 0.0;
  }
  EXPECT_NEAR(zeros / 10000.0, 0.5, 0.05);
}

TEST(GenerateTest, CensoredHasMoreInformativePairs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Dataset b = GenBinary(Small(Family::kBinary, 60, seed)).value();
    const Dataset c = GenCensored(Small(Family::kCensored, 60, seed)).value();
    const std::size_t nb = BuildPairs(b, true).size();
    const std::size_t nc = BuildPairs(c, true).size();
    EXPECT_GT(nc, nb);
    EXPECT_LT(nc, 60u * 59u);
  }
}

TEST(GenerateTest, ValidationErrors) {
  Design d = Small(Family::kBinary, 1, 1);
  EXPECT_FALSE(GenBinary(d).ok());
  d = Small(Family::kBinary, 10, 1);
  d.k = 1;
  EXPECT_FALSE(GenBinary(d).ok());
  d = Small(Family::kBinary, 10, 1);
  d.noise_sd = 0.0;
  EXPECT_FALSE(GenBinary(d).ok());
  d = Small(Family::kBinary, 10, 1);
  d.beta_true = {2.0, 1.0};
  EXPECT_FALSE(GenBinary(d).ok());
  d = Small(Family::kBinary, 10, 1);
  d.methods.clear();
  EXPECT_FALSE(ValidateDesign(d).ok());
}

TEST(CompareTest, Tolerance) {
  EXPECT_EQ(Compare(0.5, 0.5 + 1e-10), Outcome::kTie);
  EXPECT_EQ(Compare(0.5, 0.6), Outcome::kLoss);
  EXPECT_EQ(Compare(0.6, 0.5), Outcome::kWin);
}

TEST(RunMonteCarloTest, MipOnlyIsAllTies) {
  Design d = Small(Family::kBinary, 20, 3);
  d.methods = {Method::kMip};
  d.replications = 3;
  d.time_budget = 30;
  auto r = RunMonteCarlo(d);
  ASSERT_TRUE(r.ok()) << r.status();
  ASSERT_EQ(r->summary.size(), 1);
  EXPECT_EQ(r->summary[0].tie, 1.0);
  EXPECT_EQ(r->rows.size(), 3);
}

// Property: ratios sum to one, recorded objectives are recomputable, and
// the MIP is never beaten.
TEST(RunMonteCarloTest, SummaryAndDominance) {
  Design d = Small(Family::kCensored, 25, 4);
  d.replications = 3;
  d.time_budget = 30;
  d.estimate.heuristics.sann_steps = 2000;
  d.estimate.heuristics.mcmc_chain_length = 1500;
  d.estimate.heuristics.mcmc_burn_in = 500;
  d.estimate.heuristics.grid_points = 401;
  auto r = RunMonteCarlo(d);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_TRUE(r->has_reference);
  for (const MethodSummary& s : r->summary) {
    EXPECT_DOUBLE_EQ(s.loss + s.tie + s.win, 1.0);
    EXPECT_EQ(s.failures, 0);
    EXPECT_EQ(s.win, 0.0) << MethodName(s.method);
  }
  for (const ComparisonRow& row : r->rows) {
    Design local = d;
    local.seed = row.seed;
    const Dataset data = Generate(local).value();
    for (const MethodRecord& rec : row.records) {
      ASSERT_TRUE(rec.ok) << rec.diagnostic;
      EXPECT_EQ(rec.objective,
                static_cast<double>(testing::CountConcordant(data, rec.beta)) /
                    (25.0 * 24.0));
    }
  }
}

TEST(RunMonteCarloTest, ParallelReplicationsMatchSerial) {
  Design d = Small(Family::kBinary, 20, 8);
  d.methods = {Method::kMip, Method::kNelderMead};
  d.replications = 4;
  d.time_budget = 30;
  auto serial = RunMonteCarlo(d).value();
  d.workers = 3;
  auto parallel = RunMonteCarlo(d).value();
  for (int rep = 0; rep < 4; ++rep) {
    for (int m = 0; m < 2; ++m) {
      EXPECT_EQ(serial.rows[rep].records[m].beta,
                parallel.rows[rep].records[m].beta);
    }
  }
}

TEST(ObjectiveProfileTest, SmallExampleSteps) {
  auto p = ObjectiveProfile(testing::SmallExample(), {1, 2}, {1, 0}, 5);
  ASSERT_TRUE(p.ok()) << p.status();
  const std::vector<double> expected = {0, 0, 1.0 / 12, 2.0 / 12, 2.0 / 12};
  ASSERT_EQ(p->size(), 5);
  for (int t = 0; t < 5; ++t) {
    EXPECT_EQ((*p)[t].alpha, t / 4.0);
    EXPECT_EQ((*p)[t].objective, expected[t]) << t;
  }
}

TEST(ObjectiveProfileTest, EndpointsAndFlat) {
  const Dataset d = testing::SmallExample();
  auto two = ObjectiveProfile(d, {1, 3}, {1, -1}, 2).value();
  ASSERT_EQ(two.size(), 2);
  EXPECT_EQ(two[0].objective, 0.0);
  EXPECT_EQ(two[1].objective, 2.0 / 12);
  auto flat = ObjectiveProfile(d, {1, 0.7}, {1, 0.7}, 7).value();
  for (const ProfilePoint& p : flat) EXPECT_EQ(p.objective, flat[0].objective);
  EXPECT_FALSE(ObjectiveProfile(d, {1}, {1, 0}, 5).ok());
  EXPECT_FALSE(ObjectiveProfile(d, {1, 0}, {1, 0}, 1).ok());
}

}  // namespace
}  // namespace mrcmip
