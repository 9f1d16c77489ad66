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

// End-to-end acceptance checks. Each check prints one PASS or FAIL line; the
// exit status is nonzero when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "mrcmip/best_subset.h"
#include "mrcmip/branch_and_bound.h"
#include "mrcmip/commands.h"
#include "mrcmip/core.h"
#include "mrcmip/estimate.h"
#include "mrcmip/lp.h"
#include "mrcmip/mip_model.h"
#include "mrcmip/objective.h"
#include "mrcmip/simulate.h"
#include "test_util.h"

namespace mrcmip {
namespace {

constexpr double kEps = 1e-6;

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

struct Check {
  bool pass = true;
  std::string detail;
  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Splits a stream of node-log records into solves (node ids restart) and
// checks the anytime invariants of each.
class LogAuditor {
 public:
  std::function<void(const NodeLogRecord&)> Sink() {
    return [this](const NodeLogRecord& r) { Add(r); };
  }
  void Add(const NodeLogRecord& r) {
    if (r.node_id > last_id_ && last_id_ > 0) {
      if (r.bound > last_.bound + 1e-12) ++violations_;
      if (r.incumbent < last_.incumbent - 1e-12) ++violations_;
    }
    if (r.bound < r.incumbent - 1e-12) ++violations_;
    last_id_ = r.node_id;
    last_ = r;
    ++records_;
  }
  // Called after each solve with its final status and gap.
  void Finish(MipStatus status, double gap) {
    if (status == MipStatus::kOptimal && gap != 0.0) ++violations_;
    last_id_ = 0;
  }
  std::int64_t violations() const { return violations_; }
  std::int64_t records() const { return records_; }

 private:
  std::int64_t last_id_ = 0;
  NodeLogRecord last_;
  std::int64_t violations_ = 0;
  std::int64_t records_ = 0;
};

LogAuditor& Auditor() {
  static LogAuditor* auditor = new LogAuditor;
  return *auditor;
}

BnbOptions Audited() {
  BnbOptions o;
  o.node_log = Auditor().Sink();
  return o;
}

MipModel SmallExampleModel() {
  return BuildMrcMip(BuildPairs(testing::SmallExample(), true),
                     ParamBox::Uniform(1, -5, 5).value(), kEps)
      .value();
}

Check SmallExampleExactness() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  auto s = BranchAndBound(SmallExampleModel(), Audited());
  const double t = Seconds(start);
  if (!s.ok()) {
    c.Fail(std::string(s.status().message()));
    return c;
  }
  Auditor().Finish(s->status, s->gap);
  if (s->status != MipStatus::kOptimal) c.Fail("status not optimal");
  if (s->numerator != 2 || s->denom != 12) {
    c.Fail(absl::StrCat("objective ", s->numerator, "/", s->denom));
  }
  if (std::abs(s->solution.objective - 2.0 / 12.0) > 1e-12) {
    c.Fail("objective float off");
  }
  if (s->binaries != std::vector<std::int8_t>{1, 1, 0}) c.Fail("d != (1,1,0)");
  const double b2 = s->solution.beta.at(1);
  if (!(b2 > 1.0 && b2 <= 5.0)) c.Fail(absl::StrCat("beta2 = ", b2));
  if (s->gap != 0.0) c.Fail("gap not zero");
  if (t >= 1.0) c.Fail(absl::StrCat("took ", t, " s"));
  if (c.pass) {
    c.detail = absl::StrFormat("2/12, d=(1,1,0), beta2=%.6g, %d nodes, %.3f s",
                               b2, s->nodes, t);
  }
  return c;
}

Check BruteForceEquivalence() {
  Check c;
  std::mt19937_64 rng(11);
  const auto start = std::chrono::steady_clock::now();
  int matched = 0, instances = 0;
  while (instances < 50) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const Dataset d = testing::RandomDataset(rng, n, 2, 3);
    const PairSet pairs = BuildPairs(d, true);
    if (pairs.size() == 0) continue;
    ++instances;
    auto m = BuildMrcMip(pairs, ParamBox::Uniform(1, -10, 10).value(), kEps);
    auto s = BranchAndBound(*m, Audited());
    if (!s.ok()) {
      c.Fail(std::string(s.status().message()));
      continue;
    }
    Auditor().Finish(s->status, s->gap);
    const std::int64_t oracle = testing::BruteForceMrc(d, -10, 10);
    if (s->numerator == oracle && s->status == MipStatus::kOptimal) {
      ++matched;
    } else {
      c.Fail(absl::StrCat("instance ", instances, ": mip ", s->numerator,
                          " oracle ", oracle));
    }
  }
  const double t = Seconds(start);
  if (t >= 10.0) c.Fail(absl::StrCat("took ", t, " s"));
  if (c.pass) c.detail = absl::StrFormat("%d/50 match, %.2f s", matched, t);
  return c;
}

Check EvaluatorEquivalence() {
  Check c;
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  const auto start = std::chrono::steady_clock::now();
  int equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 499);
    const int k = 1 + static_cast<int>(rng() % 4);
    const int levels = static_cast<int>(rng() % 4);
    const Dataset d = testing::RandomDataset(rng, n, k, levels);
    std::vector<double> beta(k);
    for (double& b : beta) b = rng() % 5 == 0 ? 0.0 : std::round(normal(rng));
    beta[0] = 1.0;
    auto fast = MrcObjectiveFast(d, beta);
    auto naive = MrcObjectiveNaive(d, beta);
    if (fast.ok() && naive.ok() && fast->concordant == naive->concordant &&
        fast->denom == naive->denom) {
      ++equal;
    } else {
      c.Fail(absl::StrCat("case ", trial, " differs"));
    }
  }
  const double t = Seconds(start);
  if (t >= 5.0) c.Fail(absl::StrCat("took ", t, " s"));
  if (c.pass) c.detail = absl::StrFormat("%d/100 equal, %.2f s", equal, t);
  return c;
}

Check BigMDoubling() {
  Check c;
  std::mt19937_64 rng(13);
  int same = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 7, 3, 3);
    const PairSet pairs = BuildPairs(d, true);
    MipModel m =
        BuildMrcMip(pairs, ParamBox::Uniform(2, -10, 10).value(), kEps).value();
    BnbOptions o = Audited();
    o.node_big_m = false;
    auto base = BranchAndBound(m, o);
    if (!base.ok()) {
      c.Fail(std::string(base.status().message()));
      continue;
    }
    Auditor().Finish(base->status, base->gap);
    for (IndicatorLink& link : m.links) link.big_m *= 2.0;
    auto doubled = BranchAndBound(m, o);
    if (!doubled.ok()) {
      c.Fail(std::string(doubled.status().message()));
      continue;
    }
    Auditor().Finish(doubled->status, doubled->gap);
    if (doubled->numerator == base->numerator &&
        doubled->status == MipStatus::kOptimal) {
      ++same;
    } else {
      c.Fail(absl::StrCat("instance ", trial, ": ", base->numerator, " vs ",
                          doubled->numerator));
    }
  }
  if (c.pass) c.detail = absl::StrFormat("%d/10 unchanged", same);
  return c;
}

// Runs after every other MIP solve so the auditor has seen them all.
Check BnbInvariants(const Check& doubling) {
  Check c;
  if (Auditor().violations() > 0) {
    c.Fail(absl::StrCat(Auditor().violations(), " node-log violations"));
  }
  if (!doubling.pass) c.Fail(absl::StrCat("big-M doubling: ", doubling.detail));
  if (c.pass) {
    c.detail = absl::StrCat(Auditor().records(), " node records clean; ",
                            doubling.detail);
  }
  return c;
}

Check Dominance() {
  Check c;
  Design design;
  design.family = Family::kBinary;
  design.n = 50;
  design.k = 2;
  design.seed = 2026;
  design.replications = 10;
  design.time_budget = 60;
  design.estimate.mip_warm_start = false;
  design.estimate.bnb = Audited();
  const auto start = std::chrono::steady_clock::now();
  auto r = RunMonteCarlo(design);
  const double t = Seconds(start);
  if (!r.ok()) {
    c.Fail(std::string(r.status().message()));
    return c;
  }
  int dominated = 0;
  for (const ComparisonRow& row : r->rows) {
    const MethodRecord& mip = row.records[0];
    Auditor().Finish(mip.status == "optimal" ? MipStatus::kOptimal
                                             : MipStatus::kTimeLimit,
                     mip.gap);
    bool ok = mip.ok;
    for (const MethodRecord& rec : row.records) {
      if (rec.ok && rec.objective > mip.objective) ok = false;
    }
    if (ok) {
      ++dominated;
    } else {
      c.Fail(absl::StrCat("replication ", row.replication, " beaten"));
    }
  }
  if (t >= 900.0) c.Fail(absl::StrCat("took ", t, " s"));
  if (c.pass) {
    c.detail = absl::StrFormat("MIP >= all heuristics in %d/10, %.1f s",
                               dominated, t);
  }
  return c;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Check SupportRecovery() {
  Check c;
  constexpr double kFitBudget = 60.0;
  Design design;
  design.family = Family::kBinary;
  design.k = 6;
  design.beta_true = {1, 1, 1, 0, 0, 0};
  const ParamBox box = ParamBox::Uniform(5, -10, 10).value();
  BnbOptions bnb = Audited();
  bnb.time_budget = kFitBudget;
  UnOptions un;
  un.bnb = bnb;

  int recovered = 0;
  std::vector<double> u_small, u_large;
  for (int rep = 0; rep < 10; ++rep) {
    const std::uint64_t seed = ReplicationSeed(7, rep);
    design.seed = seed ^ 0x5eed;
    design.n = 2000;
    const Dataset eval = Generate(design).value();
    for (int n : {25, 100}) {
      design.n = n;
      design.seed = seed + n;
      const Dataset train = Generate(design).value();
      auto fit = FitBestSubset(train, 2, box, kEps, bnb);
      if (!fit.ok()) {
        c.Fail(std::string(fit.status().message()));
        continue;
      }
      Auditor().Finish(fit->mip.status, fit->mip.gap);
      un.seed = seed;
      auto u = EstimateUn(*fit, 2, eval, box, kEps, un);
      if (!u.ok()) {
        c.Fail(std::string(u.status().message()));
        continue;
      }
      (n == 25 ? u_small : u_large).push_back(u->u_n);
      if (n == 100 && fit->support == std::vector<int>{1, 2}) ++recovered;
    }
  }
  if (recovered < 8) c.Fail(absl::StrCat("support recovered ", recovered, "/10"));
  const double m25 = u_small.empty() ? 0.0 : Median(u_small);
  const double m100 = u_large.empty() ? 0.0 : Median(u_large);
  if (!(m100 < m25)) {
    c.Fail(absl::StrFormat("recovered %d/10 but median U_n %.5f (n=100) >= "
                           "%.5f (n=25)",
                           recovered, m100, m25));
  }
  if (c.pass) {
    c.detail = absl::StrFormat(
        "support recovered %d/10; median U_n %.5f (n=100) < %.5f (n=25)",
        recovered, m100, m25);
  }
  return c;
}

Check ScoreIdentity() {
  Check c;
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  int equal = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const int k = 2 + static_cast<int>(rng() % 2);
    const Dataset d = testing::RandomDataset(rng, n, k, 3);
    auto m = BuildSubsetMip(d, ParamBox::Uniform(k - 1, -2, 2).value(), k - 1,
                            kEps)
                 .value();
    std::vector<double> free(k - 1);
    for (double& f : free) f = rng() % 4 == 0 ? 0.0 : coef(rng);
    std::vector<std::int8_t> bin(m.num_binaries(), 0);
    for (std::size_t l = 0; l < m.links.size(); ++l) {
      bin[m.links[l].binary] = m.LinkValue(l, free) > 0.0;
    }
    for (const SwitchLink& sw : m.switches) {
      bin[sw.binary] = free[sw.continuous] != 0.0;
    }
    auto score = RankPredictionScore(d, d.ExpandBeta(free));
    if (score.ok() && score->concordant == m.Numerator(bin) &&
        score->denom == m.objective_denom) {
      ++equal;
    } else {
      c.Fail(absl::StrCat("instance ", trial, " differs"));
    }
  }
  if (c.pass) c.detail = absl::StrFormat("%d/20 identical", equal);
  return c;
}

LpModel FromDense(const testing::DenseLp& d) {
  LpModel m;
  for (std::size_t j = 0; j < d.c.size(); ++j) {
    m.AddVariable(d.l[j], d.u[j], d.c[j]);
  }
  for (std::size_t r = 0; r < d.a.size(); ++r) {
    SparseRow row;
    for (std::size_t j = 0; j < d.a[r].size(); ++j) {
      if (d.a[r][j] != 0.0) {
        row.index.push_back(static_cast<int>(j));
        row.value.push_back(d.a[r][j]);
      }
    }
    m.AddRow(std::move(row), d.b[r]);
  }
  return m;
}

testing::DenseLp ToDense(const LpModel& m) {
  testing::DenseLp d;
  d.c = m.c;
  d.l = m.lower;
  d.u = m.upper;
  d.b = m.rhs;
  for (const SparseRow& row : m.rows) {
    std::vector<double> a(m.num_vars(), 0.0);
    for (std::size_t t = 0; t < row.index.size(); ++t) {
      a[row.index[t]] += row.value[t];
    }
    d.a.push_back(std::move(a));
  }
  return d;
}

Check LpKernel() {
  Check c;
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    testing::DenseLp d;
    const int n = 1 + static_cast<int>(rng() % 6);
    const int rows = static_cast<int>(rng() % 11);
    for (int j = 0; j < n; ++j) {
      d.c.push_back(unit(rng) * 4);
      const double lo = unit(rng) * 3;
      d.l.push_back(lo);
      d.u.push_back(lo + 0.5 + 3 * (unit(rng) + 1));
    }
    for (int r = 0; r < rows; ++r) {
      std::vector<double> a(n);
      for (double& v : a) v = rng() % 3 == 0 ? 0.0 : unit(rng) * 5;
      d.a.push_back(a);
      d.b.push_back(unit(rng) * 6);
    }
    const double oracle = testing::EnumerateVertices(d);
    auto s = SolveLp(FromDense(d));
    const bool ok =
        s.ok() && (std::isinf(oracle)
                       ? s->status == LpStatus::kInfeasible
                       : s->status == LpStatus::kOptimal &&
                             std::abs(s->objective - oracle) <= 1e-6);
    if (ok) {
      ++agree;
    } else {
      c.Fail(absl::StrCat("random LP ", trial, " disagrees"));
    }
  }

  // Left child of the first branch in the 4-observation example, with the
  // constraint constants as printed there (the last pair uses M = 1).
  MipModel m = SmallExampleModel();
  m.links[2].big_m = 1.0;
  const std::vector<std::int8_t> fixed = {0, -1, -1};
  auto lp = SolveLp(m.Relaxation(fixed));
  // Hand solution: beta2 <= 1/2 from the fixed pair; the other two binaries
  // sit on their lower big-M rows at beta2 = 1/2. The second pair keeps its
  // computed M = 6 + eps.
  const double d13 = 1.0 + (0.5 - 1.0 - kEps) / (6.0 + kEps);
  const double d14 = 1.0 + (-0.5 - kEps) / 1.0;
  const double hand = (d13 + d14) / 12.0;
  const double enumerated =
      (testing::EnumerateVertices(ToDense(m.Relaxation(fixed))) +
       m.objective_constant) /
      12.0;
  double bound = -1.0;
  if (!lp.ok() || lp->status != LpStatus::kOptimal) {
    c.Fail("example node LP not optimal");
  } else {
    bound = (lp->objective + m.objective_constant) /
            static_cast<double>(m.objective_denom);
    if (std::abs(bound - hand) > 1e-9 || std::abs(bound - enumerated) > 1e-9) {
      c.Fail(absl::StrFormat("node bound %.9f, hand %.9f, enumerated %.9f",
                             bound, hand, enumerated));
    }
    if (std::abs(bound - 17.0 / 144.0) > 1e-6) {
      c.Fail(absl::StrFormat("node bound %.9f != 17/144", bound));
    }
    if (!(bound < 2.0 / 12.0)) c.Fail("node bound does not prune");
  }
  if (c.pass) {
    c.detail = absl::StrFormat(
        "%d/100 random LPs agree; example node bound %.9f (17/144 = %.9f) "
        "< 2/12",
        agree, bound, 17.0 / 144.0);
  }
  return c;
}

Check Determinism() {
  Check c;
  const auto dir = std::filesystem::temp_directory_path() / "mrcmip_accept";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "data.csv").string();
  {
    Design design;
    design.n = 30;
    design.k = 3;
    design.seed = 5;
    const Dataset d = Generate(design).value();
    std::ofstream out(csv);
    out.precision(17);
    for (std::size_t i = 0; i < d.n(); ++i) {
      out << d.y(i);
      for (double v : d.x(i)) out << "," << v;
      out << "\n";
    }
  }
  EstimateSettings est;
  est.common.deterministic = true;
  est.common.budget_secs = 60;
  est.csv_path = csv;
  est.methods = "all";
  auto e1 = CmdEstimate(est);
  auto e2 = CmdEstimate(est);
  if (!e1.ok() || !e2.ok()) {
    c.Fail("estimate failed");
  } else if (*e1 != *e2) {
    c.Fail("estimate reports differ");
  }

  SimulateSettings sim;
  sim.common.deterministic = true;
  sim.common.budget_secs = 30;
  sim.n = 20;
  sim.reps = 3;
  sim.family = "censored";
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    sim.report = (dir / absl::StrCat("report", run, ".json")).string();
    sim.common.out = (dir / absl::StrCat("rows", run, ".csv")).string();
    auto s = CmdSimulate(sim);
    if (!s.ok()) {
      c.Fail("simulate failed");
      break;
    }
    std::string text = *s;
    for (const std::string& path : {sim.report, sim.common.out}) {
      std::ifstream in(path);
      text.append(std::istreambuf_iterator<char>(in), {});
    }
    outputs.push_back(std::move(text));
  }
  if (outputs.size() == 2 && outputs[0] != outputs[1]) {
    c.Fail("simulate reports differ");
  }
  std::filesystem::remove_all(dir);
  if (c.pass) {
    c.detail = absl::StrFormat("estimate %d bytes, simulate %d bytes identical",
                               e1->size(), outputs[0].size());
  }
  return c;
}

int Run() {
  struct Item {
    int id;
    std::string name;
    Check check;
  };
  std::vector<Item> items;
  const auto report = [&items](int id, const std::string& name, Check c) {
    std::printf("%s %d %s: %s\n", c.pass ? "PASS" : "FAIL", id, name.c_str(),
                c.detail.c_str());
    std::fflush(stdout);
    items.push_back({id, name, std::move(c)});
  };
  report(1, "small example exactness", SmallExampleExactness());
  report(2, "brute-force oracle equivalence", BruteForceEquivalence());
  report(3, "evaluator equivalence", EvaluatorEquivalence());
  const Check doubling = BigMDoubling();
  report(5, "MIP dominance over heuristics", Dominance());
  report(6, "best-subset support recovery and U_n", SupportRecovery());
  report(4, "branch-and-bound invariants", BnbInvariants(doubling));
  report(7, "subset objective identity", ScoreIdentity());
  report(8, "LP kernel", LpKernel());
  report(9, "determinism", Determinism());
  int failed = 0;
  for (const Item& item : items) failed += !item.check.pass;
  std::printf("%d/%zu acceptance checks passed\n",
              static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace mrcmip

int main() { return mrcmip::Run(); }
