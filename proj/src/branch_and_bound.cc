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

#include "mrcmip/branch_and_bound.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace mrcmip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;
constexpr double kLinkTol = 1e-9;
// Slack, in numerator units, before flooring an LP bound.
constexpr double kBoundSlack = 1e-6;
constexpr int kMaxPropagationRounds = 20;

using Clock = std::chrono::steady_clock;

struct Node {
  std::int64_t id = 0;
  int depth = 0;
  // Upper bound on the objective numerator inside this subtree.
  double bound = kInf;
  std::vector<std::int8_t> fixed;
  std::vector<double> lo;
  std::vector<double> hi;
};

struct Candidate {
  std::int64_t numerator = 0;
  std::vector<double> beta;
  std::vector<std::int8_t> binaries;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
};

enum class Tighten { kNoChange, kChanged, kInfeasible };

class ModelView {
 public:
  explicit ModelView(const MipModel& model)
      : model_(model),
        switch_of_(model.num_binaries(), -1),
        link_of_(model.num_binaries(), -1) {
    for (std::size_t s = 0; s < model.switches.size(); ++s) {
      switch_of_[model.switches[s].binary] = static_cast<int>(s);
    }
    for (std::size_t l = 0; l < model.links.size(); ++l) {
      link_of_[model.links[l].binary] = static_cast<int>(l);
    }
  }

  const MipModel& model() const { return model_; }
  int switch_of(int binary) const { return switch_of_[binary]; }

  Range LinkRange(std::size_t l, std::span<const double> lo,
                  std::span<const double> hi) const {
    const auto a = model_.coeffs(l);
    Range r{model_.links[l].constant, model_.links[l].constant};
    for (std::size_t h = 0; h < a.size(); ++h) {
      if (a[h] == 0.0) continue;
      const double p = a[h] * lo[h];
      const double q = a[h] * hi[h];
      r.min += std::min(p, q);
      r.max += std::max(p, q);
    }
    return r;
  }

  // Shrinks the box so that v >= target (at_least) or v <= target.
  Tighten TightenLink(std::size_t l, double target, bool at_least,
                      std::vector<double>& lo, std::vector<double>& hi) const {
    const auto a = model_.coeffs(l);
    Tighten result = Tighten::kNoChange;
    for (std::size_t h = 0; h < a.size(); ++h) {
      if (a[h] == 0.0) continue;
      const Range r = LinkRange(l, lo, hi);
      const double p = a[h] * lo[h];
      const double q = a[h] * hi[h];
      // Need a_h beta_h >= target - (max of the other terms), or
      // a_h beta_h <= target - (min of the other terms).
      const double limit = at_least ? target - (r.max - std::max(p, q))
                                    : target - (r.min - std::min(p, q));
      const double bound = limit / a[h];
      const bool raises_lower = (a[h] > 0.0) == at_least;
      const double tol = 1e-9 * std::max(1.0, std::abs(bound));
      if (raises_lower) {
        if (bound > hi[h] + tol) return Tighten::kInfeasible;
        if (bound > lo[h] + tol) {
          lo[h] = std::min(bound, hi[h]);
          result = Tighten::kChanged;
        }
      } else {
        if (bound < lo[h] - tol) return Tighten::kInfeasible;
        if (bound < hi[h] - tol) {
          hi[h] = std::max(bound, lo[h]);
          result = Tighten::kChanged;
        }
      }
    }
    return result;
  }

  // Returns false when the node is infeasible.
  bool Propagate(Node& node) const {
    const double eps = model_.epsilon;
    for (int round = 0; round < kMaxPropagationRounds; ++round) {
      bool changed = false;
      if (!PropagateSwitches(node, changed)) return false;
      for (std::size_t l = 0; l < model_.links.size(); ++l) {
        const int b = model_.links[l].binary;
        const Range r = LinkRange(l, node.lo, node.hi);
        if (node.fixed[b] < 0) {
          const bool can_one = r.max >= eps - kLinkTol;
          const bool can_zero = r.min <= kLinkTol;
          if (!can_one && !can_zero) return false;
          if (can_one && can_zero) continue;
          node.fixed[b] = can_one ? 1 : 0;
          changed = true;
        }
        Tighten t = Tighten::kNoChange;
        if (node.fixed[b] == 1) {
          if (r.min >= eps - kLinkTol) continue;
          t = TightenLink(l, eps, /*at_least=*/true, node.lo, node.hi);
        } else {
          if (r.max <= kLinkTol) continue;
          t = TightenLink(l, 0.0, /*at_least=*/false, node.lo, node.hi);
        }
        if (t == Tighten::kInfeasible) return false;
        changed |= t == Tighten::kChanged;
      }
      if (!changed) break;
    }
    return true;
  }

 private:
  bool PropagateSwitches(Node& node, bool& changed) const {
    for (const SwitchLink& sw : model_.switches) {
      const int h = sw.continuous;
      std::int8_t& f = node.fixed[sw.binary];
      if (f < 0 && (node.lo[h] > 0.0 || node.hi[h] < 0.0)) {
        f = 1;
        changed = true;
      }
      if (f == 0) {
        if (node.lo[h] > 0.0 || node.hi[h] < 0.0) return false;
        if (node.lo[h] != 0.0 || node.hi[h] != 0.0) {
          node.lo[h] = node.hi[h] = 0.0;
          changed = true;
        }
      }
    }
    if (!model_.cardinality) return true;
    int ones = 0;
    for (int b : model_.cardinality_binaries) ones += node.fixed[b] == 1;
    if (ones > *model_.cardinality) return false;
    if (ones == *model_.cardinality) {
      for (int b : model_.cardinality_binaries) {
        if (node.fixed[b] >= 0) continue;
        const int h = model_.switches[switch_of_[b]].continuous;
        if (node.lo[h] > 0.0 || node.hi[h] < 0.0) return false;
        node.fixed[b] = 0;
        node.lo[h] = node.hi[h] = 0.0;
        changed = true;
      }
    }
    return true;
  }

  const MipModel& model_;
  std::vector<int> switch_of_;
  std::vector<int> link_of_;
};

struct NodeLp {
  bool feasible = false;
  double bound = 0.0;
  std::vector<double> beta;
  // Relaxation value of every binary.
  std::vector<double> binaries;
  std::int64_t solves = 0;
};

// Node relaxation, in numerator units:
//
//   max  sum_l w_l d_l
//   s.t. M_l d_l - a_l'beta <= c_l + M_l - eps   (free link, w_l > 0)
//        a_l'beta - M_l d_l <= -c_l              (free link, w_l < 0)
//        -a_l'beta <= c_l - eps                  (link fixed to 1)
//        a_l'beta <= -c_l                        (link fixed to 0)
//        switch rows and the cardinality row on the free e
//        beta in the node box, d and e in [0, 1].
//
// Only the row a pair's weight pushes against is kept. M_l is recomputed from
// the node box unless the model's values are requested. The relaxation has one row per pair, so it is solved in
// dual form, which has one row per continuous variable and per free switch.
// With beta = lo + W * lambda, lambda in [0, 1], every primal variable has
// bounds [0, u] and the dual is
//
//   min  b'y + sum_j u_j max(-A_j'y + c_j, 0)
//
// where the max terms become capped pieces or epigraph columns. Its row
// multipliers are lambda and e.
absl::StatusOr<NodeLp> SolveNodeLp(const ModelView& view, const Node& node,
                                   bool node_big_m,
                                   const LpOptions& lp_options) {
  const MipModel& m = view.model();
  const int q = m.num_continuous();
  const double eps = m.epsilon;
  NodeLp out;
  out.solves = 1;

  std::vector<double> width(q);
  for (int h = 0; h < q; ++h) width[h] = node.hi[h] - node.lo[h];
  std::vector<int> free_switches;
  for (const SwitchLink& sw : m.switches) {
    if (node.fixed[sw.binary] < 0) free_switches.push_back(sw.binary);
  }
  std::vector<int> switch_row(m.num_binaries(), -1);
  for (std::size_t g = 0; g < free_switches.size(); ++g) {
    switch_row[free_switches[g]] = q + static_cast<int>(g);
  }
  const int num_rows = q + static_cast<int>(free_switches.size());

  // Columns are collected per dual row, then emitted as sparse rows.
  std::vector<SparseRow> rows(num_rows);
  LpModel lp;
  auto add_column = [&](double lo, double hi, double cost) {
    return lp.AddVariable(lo, hi, cost);
  };
  auto put = [&](int row, int col, double value) {
    if (value == 0.0) return;
    rows[row].index.push_back(col);
    rows[row].value.push_back(value);
  };
  // Dual column of a primal row whose beta coefficients are sign * a.
  auto put_link = [&](std::size_t l, int col, double sign) {
    const auto a = m.coeffs(l);
    for (int h = 0; h < q; ++h) put(h, col, -width[h] * sign * a[h]);
  };

  double constant = static_cast<double>(m.objective_constant);
  for (int b = 0; b < m.num_binaries(); ++b) {
    if (node.fixed[b] == 1) constant += static_cast<double>(m.binary_weight[b]);
  }
  for (std::size_t l = 0; l < m.links.size(); ++l) {
    const IndicatorLink& link = m.links[l];
    const std::int8_t f = node.fixed[link.binary];
    const Range r = view.LinkRange(l, node.lo, node.hi);
    // Link value with beta at the lower corner of the box.
    double c = link.constant;
    const auto a = m.coeffs(l);
    for (int h = 0; h < q; ++h) c += a[h] * node.lo[h];
    if (f == 1) {
      if (r.min >= eps) continue;
      put_link(l, add_column(0.0, kInf, -(c - eps)), -1.0);
      continue;
    }
    if (f == 0) {
      if (r.max <= 0.0) continue;
      put_link(l, add_column(0.0, kInf, c), 1.0);
      continue;
    }
    const std::int64_t w = m.binary_weight[link.binary];
    if (w == 0) continue;
    const double big_m =
        node_big_m ? std::max(std::abs(r.min), std::abs(r.max)) + eps
                   : link.big_m;
    const double cap = static_cast<double>(std::abs(w)) / big_m;
    if (w > 0) {
      constant += static_cast<double>(w);
      put_link(l, add_column(0.0, cap, -(c - eps)), -1.0);
      put_link(l, add_column(0.0, kInf, -(c + big_m - eps)), -1.0);
    } else {
      put_link(l, add_column(0.0, cap, c), 1.0);
      put_link(l, add_column(0.0, kInf, c - big_m), 1.0);
    }
  }
  for (int b : free_switches) {
    const int h = m.switches[view.switch_of(b)].continuous;
    const int row = switch_row[b];
    if (node.hi[h] > 0.0) {
      // beta_h - hi e <= 0
      const int col = add_column(0.0, kInf, node.lo[h]);
      put(h, col, -width[h]);
      put(row, col, node.hi[h]);
    }
    if (node.lo[h] < 0.0) {
      // -beta_h + lo e <= 0
      const int col = add_column(0.0, kInf, -node.lo[h]);
      put(h, col, width[h]);
      put(row, col, -node.lo[h]);
    }
  }
  if (m.cardinality && !free_switches.empty()) {
    int ones = 0;
    for (int b : m.cardinality_binaries) ones += node.fixed[b] == 1;
    const int room = *m.cardinality - ones;
    if (room < static_cast<int>(free_switches.size())) {
      const int col = add_column(0.0, kInf, -static_cast<double>(room));
      for (int b : free_switches) put(switch_row[b], col, -1.0);
    }
  }
  // Epigraph columns of the beta and e bound terms.
  for (int row = 0; row < num_rows; ++row) {
    put(row, add_column(0.0, kInf, -1.0), -1.0);
  }
  for (SparseRow& row : rows) lp.AddRow(std::move(row), 0.0);

  auto solved = SolveLp(lp, lp_options);
  if (!solved.ok()) return solved.status();
  if (solved->status != LpStatus::kOptimal) {
    // An unbounded dual means an empty node.
    out.feasible = false;
    return out;
  }
  out.feasible = true;
  out.bound = constant - solved->objective;
  out.beta.resize(q);
  for (int h = 0; h < q; ++h) {
    out.beta[h] = std::clamp(
        node.lo[h] + width[h] * std::min(solved->duals[h], 1.0), node.lo[h],
        node.hi[h]);
  }
  out.binaries.assign(m.num_binaries(), 0.0);
  for (int b = 0; b < m.num_binaries(); ++b) {
    if (node.fixed[b] >= 0) out.binaries[b] = node.fixed[b];
  }
  for (int b : free_switches) {
    out.binaries[b] = std::clamp(solved->duals[switch_row[b]], 0.0, 1.0);
  }
  for (std::size_t l = 0; l < m.links.size(); ++l) {
    const int b = m.links[l].binary;
    if (node.fixed[b] >= 0) continue;
    const std::int64_t w = m.binary_weight[b];
    const Range r = view.LinkRange(l, node.lo, node.hi);
    const double big_m =
        node_big_m ? std::max(std::abs(r.min), std::abs(r.max)) + eps
                   : m.links[l].big_m;
    const double v = m.LinkValue(l, out.beta);
    double d;
    if (w > 0) {
      d = (v + big_m - eps) / big_m;
    } else if (w < 0) {
      d = v / big_m;
    } else {
      d = v >= eps ? 1.0 : 0.0;
    }
    out.binaries[b] = std::clamp(d, 0.0, 1.0);
  }
  return out;
}

double Fractionality(double x) {
  return std::min(x - std::floor(x), std::ceil(x) - x);
}

// Clips to the global box, enforces the cardinality row by keeping the s
// largest scaled coefficients, then completes the binaries.
std::optional<Candidate> RoundBeta(const MipModel& m,
                                   std::span<const double> lp_beta,
                                   double tol) {
  std::vector<double> beta(lp_beta.begin(), lp_beta.end());
  for (int h = 0; h < m.num_continuous(); ++h) {
    beta[h] = std::clamp(beta[h], m.continuous_lower[h], m.continuous_upper[h]);
  }
  for (const SwitchLink& sw : m.switches) {
    if (std::abs(beta[sw.continuous]) < 1e-12) beta[sw.continuous] = 0.0;
  }
  if (m.cardinality) {
    std::vector<std::pair<double, int>> scaled;
    for (const SwitchLink& sw : m.switches) {
      const int h = sw.continuous;
      const double scale = std::max({std::abs(m.continuous_lower[h]),
                                     std::abs(m.continuous_upper[h]), 1e-300});
      if (beta[h] != 0.0) scaled.push_back({-std::abs(beta[h]) / scale, h});
    }
    if (static_cast<int>(scaled.size()) > *m.cardinality) {
      std::sort(scaled.begin(), scaled.end());
      for (std::size_t t = *m.cardinality; t < scaled.size(); ++t) {
        beta[scaled[t].second] = 0.0;
      }
    }
  }
  auto binaries = CompleteAssignment(m, beta, tol);
  if (!binaries) return std::nullopt;
  Candidate c;
  c.numerator = m.Numerator(*binaries);
  c.beta = std::move(beta);
  c.binaries = std::move(*binaries);
  return c;
}

// Moves beta away from the d = 0 faces v = 0 while keeping the binary
// pattern, so that 1{v > 0} evaluated in floating point reproduces the
// incumbent's binaries. Maximizes a common margin t in [0, eps] with lazily
// added rows; falls back to the unpolished beta on any failure.
std::vector<double> PolishBeta(const MipModel& m, const Candidate& c,
                               const LpOptions& lp_options) {
  const int q = m.num_continuous();
  const double eps = m.epsilon;
  std::vector<double> lo = m.continuous_lower;
  std::vector<double> hi = m.continuous_upper;
  for (const SwitchLink& sw : m.switches) {
    if (c.binaries[sw.binary] == 0) lo[sw.continuous] = hi[sw.continuous] = 0.0;
  }
  bool exact = true;
  for (std::size_t l = 0; l < m.links.size() && exact; ++l) {
    const double v = m.LinkValue(l, c.beta);
    exact = (c.binaries[m.links[l].binary] == 1) == (v > 0.0) && v != 0.0;
  }
  if (exact) return c.beta;
  std::vector<char> working(m.links.size(), 0);
  std::vector<double> beta = c.beta;
  double margin = 0.0;
  for (int round = 0; round < 50; ++round) {
    bool added = false;
    for (std::size_t l = 0; l < m.links.size(); ++l) {
      if (working[l]) continue;
      const double v = m.LinkValue(l, beta);
      const bool on = c.binaries[m.links[l].binary] == 1;
      const bool violated =
          on ? v < eps : (round == 0 ? v > -eps : v > -0.5 * margin);
      if (violated) {
        working[l] = 1;
        added = true;
      }
    }
    if (!added && round > 0) break;
    LpModel lp;
    for (int h = 0; h < q; ++h) lp.AddVariable(lo[h], hi[h], 0.0);
    const int t = lp.AddVariable(0.0, eps, 1.0);
    for (std::size_t l = 0; l < m.links.size(); ++l) {
      if (!working[l]) continue;
      const auto a = m.coeffs(l);
      const bool on = c.binaries[m.links[l].binary] == 1;
      SparseRow row;
      for (int h = 0; h < q; ++h) {
        if (a[h] == 0.0) continue;
        row.index.push_back(h);
        row.value.push_back(on ? -a[h] : a[h]);
      }
      if (on) {
        lp.AddRow(std::move(row), m.links[l].constant - eps);
      } else {
        // A constant index difference cannot gain margin.
        if (!row.index.empty()) {
          row.index.push_back(t);
          row.value.push_back(1.0);
        }
        lp.AddRow(std::move(row), -m.links[l].constant);
      }
    }
    auto solved = SolveLp(lp, lp_options);
    if (!solved.ok() || solved->status != LpStatus::kOptimal) return c.beta;
    beta.assign(solved->z.begin(), solved->z.begin() + q);
    margin = solved->z[t];
  }
  auto binaries = CompleteAssignment(m, beta, kLinkTol);
  if (!binaries || m.Numerator(*binaries) < c.numerator) return c.beta;
  return beta;
}

struct Outcome {
  absl::Status status;
  bool infeasible = false;
  double bound = 0.0;
  std::optional<Candidate> candidate;
  std::vector<Node> children;
  std::int64_t lp_solves = 0;
};

class Search {
 public:
  Search(const MipModel& model, const BnbOptions& options)
      : model_(model), view_(model), options_(options) {}

  absl::StatusOr<MipSolution> Run() {
    start_ = Clock::now();
    max_numerator_ = static_cast<double>(model_.objective_constant);
    for (std::int64_t w : model_.binary_weight) {
      if (w > 0) max_numerator_ += static_cast<double>(w);
    }
    reported_bound_ = max_numerator_;
    SeedIncumbent();

    Node root;
    root.id = next_id_++;
    root.bound = max_numerator_;
    root.fixed.assign(model_.num_binaries(), -1);
    root.lo = model_.continuous_lower;
    root.hi = model_.continuous_upper;
    Push(std::move(root));

    const int workers =
        options_.deterministic ? 1 : std::max(1, options_.workers);
    if (workers == 1) {
      Work();
    } else {
      std::vector<std::thread> threads;
      for (int t = 0; t < workers; ++t) threads.emplace_back([this] { Work(); });
      for (auto& t : threads) t.join();
    }
    if (!error_.ok()) return error_;
    return Finish();
  }

 private:
  using Key = std::pair<double, std::int64_t>;

  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  void SeedIncumbent() {
    std::vector<std::vector<double>> starts;
    if (options_.warm_start &&
        static_cast<int>(options_.warm_start->size()) ==
            model_.num_continuous()) {
      starts.push_back(*options_.warm_start);
    }
    std::vector<double> mid(model_.num_continuous());
    for (int h = 0; h < model_.num_continuous(); ++h) {
      mid[h] = 0.5 * (model_.continuous_lower[h] + model_.continuous_upper[h]);
    }
    starts.push_back(std::move(mid));
    for (const auto& s : starts) {
      if (auto c = RoundBeta(model_, s, kLinkTol)) Offer(std::move(*c));
    }
  }

  // Caller holds mu_ (or runs before workers start).
  void Offer(Candidate c) {
    if (!has_incumbent_ || c.numerator > incumbent_.numerator) {
      incumbent_ = std::move(c);
      has_incumbent_ = true;
    }
  }

  double GapAllowance() const {
    if (!has_incumbent_) return 0.0;
    const double value = model_.Value(incumbent_.numerator);
    return options_.gap_tol * std::max(1.0, std::abs(value)) *
           static_cast<double>(model_.objective_denom);
  }

  double Floor(double bound) const { return std::floor(bound + kBoundSlack); }

  bool CannotImprove(double bound) const {
    return has_incumbent_ &&
           Floor(bound) <=
               static_cast<double>(incumbent_.numerator) + GapAllowance();
  }

  void Push(Node node) {
    const Key key = options_.node_selection == NodeSelection::kBestBound
                        ? Key{-node.bound, node.id}
                        : Key{-static_cast<double>(node.id), node.id};
    live_bounds_.insert(node.bound);
    open_.emplace(key, std::move(node));
  }

  void DropLive(double bound) {
    auto it = live_bounds_.find(bound);
    if (it != live_bounds_.end()) live_bounds_.erase(it);
  }

  // Global bound in numerator units; monotone nonincreasing by construction.
  double GlobalBound() {
    double bound = live_bounds_.empty() ? -kInf : Floor(*live_bounds_.rbegin());
    if (has_incumbent_) {
      bound = std::max(bound, static_cast<double>(incumbent_.numerator));
    }
    reported_bound_ = std::min(reported_bound_, bound);
    return reported_bound_;
  }

  void Work() {
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      cv_.wait(lock, [this] { return stop_ || !open_.empty() || busy_ == 0; });
      if (stop_) return;
      if (open_.empty()) {
        stop_ = true;
        cv_.notify_all();
        return;
      }
      if (Elapsed() >= options_.time_budget ||
          (options_.max_nodes && nodes_ >= *options_.max_nodes)) {
        limit_hit_ = true;
        stop_ = true;
        cv_.notify_all();
        return;
      }
      auto it = open_.begin();
      Node node = std::move(it->second);
      open_.erase(it);
      if (CannotImprove(node.bound)) {
        DropLive(node.bound);
        continue;
      }
      ++busy_;
      const bool had_incumbent = has_incumbent_;
      const std::int64_t incumbent = incumbent_.numerator;
      const double allowance = GapAllowance();
      lock.unlock();

      Outcome outcome = Process(node, had_incumbent, incumbent, allowance);

      lock.lock();
      --busy_;
      ++nodes_;
      lp_solves_ += outcome.lp_solves;
      if (!outcome.status.ok()) {
        error_ = outcome.status;
        stop_ = true;
        cv_.notify_all();
        return;
      }
      if (outcome.candidate) Offer(std::move(*outcome.candidate));
      DropLive(node.bound);
      for (Node& child : outcome.children) {
        if (CannotImprove(child.bound)) continue;
        child.id = next_id_++;
        Push(std::move(child));
      }
      const double bound = GlobalBound();
      Log(node, bound);
      if (has_incumbent_ &&
          bound <= static_cast<double>(incumbent_.numerator) + GapAllowance()) {
        stop_ = true;
      }
      cv_.notify_all();
    }
  }

  Outcome Process(Node& node, bool had_incumbent, std::int64_t incumbent,
                  double allowance) {
    Outcome out;
    if (!view_.Propagate(node)) {
      out.infeasible = true;
      return out;
    }
    auto lp = SolveNodeLp(view_, node, options_.node_big_m, options_.lp);
    if (!lp.ok()) {
      out.status = lp.status();
      return out;
    }
    out.lp_solves = lp->solves;
    if (!lp->feasible) {
      out.infeasible = true;
      return out;
    }
    out.bound = std::min(lp->bound, node.bound);
    if (options_.rounding_heuristic) {
      out.candidate = RoundBeta(model_, lp->beta, kLinkTol);
    }

    int branch = -1;
    double best = 0.0;
    auto consider = [&](int b) {
      const double f = Fractionality(lp->binaries[b]);
      if (f <= kIntTol) return;
      if (options_.branch_rule == BranchRule::kPairOrder) {
        if (branch < 0) branch = b;
      } else if (f > best + 1e-12) {
        best = f;
        branch = b;
      }
    };
    // Switch binaries first, then pair binaries, each in model order.
    for (const SwitchLink& sw : model_.switches) {
      if (node.fixed[sw.binary] < 0) consider(sw.binary);
    }
    if (branch < 0) {
      for (const IndicatorLink& link : model_.links) {
        if (node.fixed[link.binary] < 0) consider(link.binary);
      }
    }

    if (branch < 0) {
      // Integral relaxation: its beta is feasible for the subtree.
      auto exact = RoundBeta(model_, lp->beta, 0.5 * model_.epsilon);
      if (exact && (!out.candidate ||
                    exact->numerator > out.candidate->numerator)) {
        out.candidate = std::move(exact);
      }
      return out;
    }
    std::int64_t best_known = incumbent;
    bool have = had_incumbent;
    if (out.candidate) {
      best_known = have ? std::max(best_known, out.candidate->numerator)
                        : out.candidate->numerator;
      have = true;
    }
    if (have && std::floor(out.bound + kBoundSlack) <=
                    static_cast<double>(best_known) + allowance) {
      return out;
    }
    for (std::int8_t value : {0, 1}) {
      Node child;
      child.depth = node.depth + 1;
      child.bound = out.bound;
      child.fixed = node.fixed;
      child.fixed[branch] = value;
      child.lo = node.lo;
      child.hi = node.hi;
      out.children.push_back(std::move(child));
    }
    return out;
  }

  void Log(const Node& node, double bound_numerator) {
    if (!options_.node_log) return;
    NodeLogRecord record;
    record.node_id = node.id;
    record.depth = node.depth;
    record.bound = model_.Value(0) + bound_numerator /
                                         static_cast<double>(model_.objective_denom);
    record.incumbent =
        has_incumbent_ ? model_.Value(incumbent_.numerator) : -kInf;
    record.gap = has_incumbent_
                     ? RelativeGapPercent(record.bound, record.incumbent)
                     : kInf;
    record.seconds = Elapsed();
    options_.node_log(record);
  }

  MipSolution Finish() {
    MipSolution out;
    out.nodes = nodes_;
    out.lp_solves = lp_solves_;
    out.denom = model_.objective_denom;
    out.solution.method = "mip";
    out.solution.elapsed = Elapsed();
    out.solution.evaluations = lp_solves_;
    if (!has_incumbent_) {
      out.status = MipStatus::kInfeasible;
      return out;
    }
    const double bound = GlobalBound();
    const bool closed =
        bound <= static_cast<double>(incumbent_.numerator) + GapAllowance();
    out.status = (!limit_hit_ || closed) ? MipStatus::kOptimal
                                         : MipStatus::kTimeLimit;
    out.numerator = incumbent_.numerator;
    out.binaries = incumbent_.binaries;
    out.solution.beta =
        model_.FullBeta(PolishBeta(model_, incumbent_, options_.lp));
    out.solution.objective = model_.Value(incumbent_.numerator);
    if (out.status == MipStatus::kOptimal && options_.gap_tol == 0.0) {
      out.dual_bound = out.solution.objective;
    } else {
      out.dual_bound = std::max(
          out.solution.objective,
          bound / static_cast<double>(model_.objective_denom));
    }
    out.gap = out.status == MipStatus::kOptimal && options_.gap_tol == 0.0
                  ? 0.0
                  : RelativeGapPercent(out.dual_bound, out.solution.objective);
    return out;
  }

  const MipModel& model_;
  ModelView view_;
  const BnbOptions& options_;
  Clock::time_point start_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::map<Key, Node> open_;
  std::multiset<double> live_bounds_;
  int busy_ = 0;
  bool stop_ = false;
  bool limit_hit_ = false;
  absl::Status error_;

  std::int64_t next_id_ = 0;
  std::int64_t nodes_ = 0;
  std::int64_t lp_solves_ = 0;
  double max_numerator_ = 0.0;
  double reported_bound_ = kInf;
  bool has_incumbent_ = false;
  Candidate incumbent_;
};

}  // namespace

std::string FormatNodeLog(const NodeLogRecord& r) {
  return absl::StrFormat(
      "{\"node\":%d,\"depth\":%d,\"bound\":%.17g,\"incumbent\":%.17g,"
      "\"gap\":%.17g,\"seconds\":%.6f}",
      r.node_id, r.depth, r.bound, r.incumbent, r.gap, r.seconds);
}

std::optional<std::vector<std::int8_t>> CompleteAssignment(
    const MipModel& model, std::span<const double> beta, double tol) {
  std::vector<std::int8_t> binaries(model.num_binaries(), 0);
  for (std::size_t l = 0; l < model.links.size(); ++l) {
    const double v = model.LinkValue(l, beta);
    if (v >= model.epsilon - tol) {
      binaries[model.links[l].binary] = 1;
    } else if (v > tol) {
      return std::nullopt;
    }
  }
  int ones = 0;
  for (const SwitchLink& sw : model.switches) {
    const double b = beta[sw.continuous];
    if (b < model.continuous_lower[sw.continuous] ||
        b > model.continuous_upper[sw.continuous]) {
      return std::nullopt;
    }
    binaries[sw.binary] = b != 0.0 ? 1 : 0;
    ones += binaries[sw.binary];
  }
  if (model.cardinality && ones > *model.cardinality) return std::nullopt;
  return binaries;
}

absl::StatusOr<MipSolution> BranchAndBound(const MipModel& model,
                                           const BnbOptions& options) {
  if (!(options.time_budget > 0.0)) {
    return absl::InvalidArgumentError("time budget must be positive");
  }
  if (options.gap_tol < 0.0) {
    return absl::InvalidArgumentError("gap tolerance must be nonnegative");
  }
  if (static_cast<int>(model.binary_weight.size()) != model.num_binaries() ||
      static_cast<int>(model.link_coeffs.size()) !=
          static_cast<int>(model.links.size()) * model.num_continuous()) {
    return absl::InvalidArgumentError("inconsistent model dimensions");
  }
  Search search(model, options);
  return search.Run();
}

}  // namespace mrcmip
