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

#include "mrcmip/heuristics.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "mrcmip/objective.h"

namespace mrcmip {
namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  explicit Budget(double seconds) : start_(Clock::now()), seconds_(seconds) {}
  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  bool Exhausted() const { return Elapsed() >= seconds_; }

 private:
  Clock::time_point start_;
  double seconds_;
};

// Counts evaluations and remembers the best point seen.
class Tracker {
 public:
  explicit Tracker(const FreeObjective& objective) : objective_(objective) {}

  double operator()(std::span<const double> x) {
    const double f = objective_(x);
    ++evaluations_;
    if (best_.empty() || f > best_value_) {
      best_value_ = f;
      best_.assign(x.begin(), x.end());
    }
    return f;
  }

  SearchResult Result(const Budget& budget) const {
    SearchResult out;
    out.point = best_;
    out.value = best_value_;
    out.evaluations = evaluations_;
    out.elapsed = budget.Elapsed();
    return out;
  }

  std::int64_t evaluations() const { return evaluations_; }

 private:
  const FreeObjective& objective_;
  std::vector<double> best_;
  double best_value_ = 0.0;
  std::int64_t evaluations_ = 0;
};

std::vector<double> Clipped(std::span<const double> x, const ParamBox& box) {
  std::vector<double> out(x.begin(), x.end());
  box.Clip(out);
  return out;
}

// Folds x back into [lo, hi] by reflection at the faces.
double Reflect(double x, double lo, double hi) {
  const double width = hi - lo;
  if (!(width > 0.0)) return lo;
  double m = std::fmod(x - lo, 2.0 * width);
  if (m < 0.0) m += 2.0 * width;
  return m <= width ? lo + m : lo + 2.0 * width - m;
}

std::vector<double> UniformDraw(const ParamBox& box, std::mt19937_64& rng) {
  std::vector<double> x(box.dim());
  for (std::size_t h = 0; h < box.dim(); ++h) {
    std::uniform_real_distribution<double> u(box.lower(h), box.upper(h));
    x[h] = u(rng);
  }
  return x;
}

void RandomWalkProposal(std::span<const double> x, const ParamBox& box,
                        double scale, std::mt19937_64& rng,
                        std::normal_distribution<double>& normal,
                        std::vector<double>& out) {
  out.resize(x.size());
  for (std::size_t h = 0; h < x.size(); ++h) {
    const double width = box.upper(h) - box.lower(h);
    out[h] = Reflect(x[h] + scale * width * normal(rng), box.lower(h),
                     box.upper(h));
  }
}

void RunNelderMead(Tracker& f, std::span<const double> start,
                   const ParamBox& box, const HeuristicOptions& o,
                   const Budget& budget) {
  const std::size_t p = box.dim();
  std::vector<std::vector<double>> simplex(p + 1, Clipped(start, box));
  for (std::size_t h = 0; h < p; ++h) {
    const double step = o.nm_initial_step * (box.upper(h) - box.lower(h));
    double& c = simplex[h + 1][h];
    c = c + step <= box.upper(h) ? c + step : c - step;
  }
  std::vector<double> value(p + 1);
  for (std::size_t v = 0; v <= p; ++v) value[v] = f(simplex[v]);

  std::vector<int> order(p + 1);
  std::vector<double> centroid(p), trial(p), second(p);
  auto toward = [&](std::span<const double> from, std::span<const double> to,
                    double t, std::vector<double>& out) {
    for (std::size_t h = 0; h < p; ++h) out[h] = from[h] + t * (to[h] - from[h]);
    box.Clip(out);
  };

  for (int iter = 0; iter < o.nm_max_iters && !budget.Exhausted(); ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value[a] > value[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int next_worst = order[p - 1];
    if (std::abs(value[best] - value[worst]) <=
        o.nm_reltol * (std::abs(value[best]) + o.nm_reltol)) {
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < p; ++v) {
      for (std::size_t h = 0; h < p; ++h) centroid[h] += simplex[order[v]][h];
    }
    for (double& c : centroid) c /= static_cast<double>(p);

    // Reflection is centroid + reflect * (centroid - worst).
    toward(centroid, simplex[worst], -o.nm_reflect, trial);
    const double fr = f(trial);
    if (fr > value[best]) {
      toward(centroid, trial, o.nm_expand, second);
      const double fe = f(second);
      if (fe > fr) {
        simplex[worst] = second;
        value[worst] = fe;
      } else {
        simplex[worst] = trial;
        value[worst] = fr;
      }
      continue;
    }
    if (fr > value[next_worst]) {
      simplex[worst] = trial;
      value[worst] = fr;
      continue;
    }
    bool accepted = false;
    if (fr > value[worst]) {
      toward(centroid, trial, o.nm_contract, second);
      const double fc = f(second);
      if (fc >= fr) {
        simplex[worst] = second;
        value[worst] = fc;
        accepted = true;
      }
    } else {
      toward(centroid, simplex[worst], o.nm_contract, second);
      const double fc = f(second);
      if (fc > value[worst]) {
        simplex[worst] = second;
        value[worst] = fc;
        accepted = true;
      }
    }
    if (accepted) continue;
    for (std::size_t v = 0; v <= p; ++v) {
      if (static_cast<int>(v) == best) continue;
      toward(simplex[best], simplex[v], o.nm_shrink, trial);
      simplex[v] = trial;
      value[v] = f(simplex[v]);
    }
  }
}

}  // namespace

absl::Status ValidateHeuristicOptions(const HeuristicOptions& o) {
  if (!(o.time_budget > 0.0)) {
    return absl::InvalidArgumentError("time budget must be positive");
  }
  if (o.nm_max_iters < 1 || o.nm_restarts < 1 || o.grid_points < 2 ||
      o.grid_max_sweeps < 1 || o.sann_steps < 0 || o.mcmc_chain_length < 1 ||
      o.mcmc_burn_in < 0) {
    return absl::InvalidArgumentError("heuristic counts must be positive");
  }
  if (o.mcmc_chain_length <= o.mcmc_burn_in) {
    return absl::InvalidArgumentError(
        "MCMC chain length must exceed the burn-in");
  }
  if (o.sann_initial_temp < 0.0 || !(o.sann_cooling_rate > 0.0) ||
      o.sann_cooling_rate > 1.0 || o.sann_proposal_scale < 0.0 ||
      o.mcmc_proposal_scale < 0.0 || o.mcmc_lambda < 0.0) {
    return absl::InvalidArgumentError("invalid annealing or chain controls");
  }
  return absl::OkStatus();
}

OlsStart ComputeOlsStart(const Dataset& d, const ParamBox& box) {
  const Eigen::Index n = static_cast<Eigen::Index>(d.n());
  const Eigen::Index k = static_cast<Eigen::Index>(d.k());
  Eigen::MatrixXd design(n, k + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    for (Eigen::Index c = 0; c < k; ++c) design(i, c + 1) = d.x(i)[c];
    y(i) = d.y(i);
  }
  OlsStart out;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  const Eigen::Index normalized = static_cast<Eigen::Index>(d.normalized_index());
  if (qr.rank() == k + 1) {
    const Eigen::VectorXd b = qr.solve(y);
    const double pivot = b(normalized + 1);
    if (std::abs(pivot) >= 1e-12) {
      out.beta.resize(d.k());
      for (Eigen::Index c = 0; c < k; ++c) {
        out.beta[c] = d.normalized_sign() * b(c + 1) / pivot;
      }
      std::vector<double> free = d.FreePart(out.beta);
      box.Clip(free);
      out.beta = d.ExpandBeta(free);
      return out;
    }
  }
  out.fallback = true;
  out.beta = d.ExpandBeta(box.Midpoint());
  return out;
}

SearchResult NelderMead(const FreeObjective& objective,
                        std::span<const double> start, const ParamBox& box,
                        const HeuristicOptions& options) {
  Budget budget(options.time_budget);
  Tracker f(objective);
  RunNelderMead(f, start, box, options, budget);
  return f.Result(budget);
}

SearchResult NelderMeadMultiStart(const FreeObjective& objective,
                                  std::span<const double> start,
                                  const ParamBox& box,
                                  const HeuristicOptions& options,
                                  std::uint64_t seed) {
  Budget budget(options.time_budget);
  Tracker f(objective);
  std::mt19937_64 rng(seed);
  RunNelderMead(f, start, box, options, budget);
  for (int run = 1; !budget.Exhausted(); ++run) {
    if (options.deterministic && run >= options.nm_restarts) break;
    RunNelderMead(f, UniformDraw(box, rng), box, options, budget);
  }
  return f.Result(budget);
}

SearchResult IterativeGridSearch(const FreeObjective& objective,
                                 std::span<const double> start,
                                 const ParamBox& box,
                                 const HeuristicOptions& options) {
  Budget budget(options.time_budget);
  Tracker f(objective);
  std::vector<double> x = Clipped(start, box);
  double current = f(x);
  const int points = options.grid_points;
  for (int sweep = 0; sweep < options.grid_max_sweeps; ++sweep) {
    bool improved = false;
    for (std::size_t h = 0; h < box.dim() && !budget.Exhausted(); ++h) {
      const double lo = box.lower(h);
      const double width = box.upper(h) - lo;
      double best_value = current;
      double best_coord = x[h];
      for (int t = 0; t < points; ++t) {
        x[h] = lo + width * static_cast<double>(t) / (points - 1);
        const double value = f(x);
        if (value > best_value) {
          best_value = value;
          best_coord = x[h];
        }
      }
      x[h] = best_coord;
      if (best_value > current) {
        current = best_value;
        improved = true;
      }
    }
    if (!improved || budget.Exhausted()) break;
  }
  return f.Result(budget);
}

SearchResult SimulatedAnnealing(const FreeObjective& objective,
                                std::span<const double> start,
                                const ParamBox& box,
                                const HeuristicOptions& options,
                                std::uint64_t seed) {
  Budget budget(options.time_budget);
  Tracker f(objective);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  std::vector<double> x = Clipped(start, box);
  double fx = f(x);
  std::vector<double> y;
  double temp = options.sann_initial_temp;
  for (int t = 0; t < options.sann_steps && !budget.Exhausted(); ++t) {
    RandomWalkProposal(x, box, options.sann_proposal_scale, rng, normal, y);
    const double fy = f(y);
    bool accept;
    if (temp > 0.0) {
      accept = fy >= fx || unit(rng) < std::exp((fy - fx) / temp);
    } else {
      accept = fy > fx;
    }
    if (accept) {
      x.swap(y);
      fx = fy;
    }
    temp *= options.sann_cooling_rate;
  }
  return f.Result(budget);
}

SearchResult McmcEstimate(const FreeObjective& objective,
                          std::span<const double> start, const ParamBox& box,
                          const HeuristicOptions& options, double sample_size,
                          std::uint64_t seed) {
  Budget budget(options.time_budget);
  std::int64_t evaluations = 0;
  auto eval = [&](std::span<const double> z) {
    ++evaluations;
    return objective(z);
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const double scale = options.mcmc_lambda * sample_size;

  std::vector<double> x = Clipped(start, box);
  double fx = eval(x);
  std::vector<double> y;
  SearchResult out;
  out.chain_mean.assign(box.dim(), 0.0);
  std::int64_t retained = 0;
  for (int t = 1; t <= options.mcmc_chain_length; ++t) {
    if (budget.Exhausted() && retained > 0) break;
    RandomWalkProposal(x, box, options.mcmc_proposal_scale, rng, normal, y);
    const double fy = eval(y);
    if (fy >= fx || unit(rng) < std::exp(scale * (fy - fx))) {
      x.swap(y);
      fx = fy;
    }
    if (t <= options.mcmc_burn_in) continue;
    ++retained;
    for (std::size_t h = 0; h < x.size(); ++h) out.chain_mean[h] += x[h];
    if (retained == 1 || fx > out.value) {
      out.value = fx;
      out.point = x;
    }
  }
  if (retained == 0) {
    // The budget ran out during burn-in: report the current state.
    out.point = x;
    out.value = fx;
    out.chain_mean = x;
  } else {
    for (double& m : out.chain_mean) m /= static_cast<double>(retained);
  }
  out.evaluations = evaluations;
  out.elapsed = budget.Elapsed();
  return out;
}

std::string HeuristicMethodName(HeuristicMethod method) {
  switch (method) {
    case HeuristicMethod::kNelderMead:
      return "nm";
    case HeuristicMethod::kNelderMeadMulti:
      return "nm-multi";
    case HeuristicMethod::kGrid:
      return "grid";
    case HeuristicMethod::kSann:
      return "sann";
    case HeuristicMethod::kMcmc:
      return "mcmc";
  }
  return "unknown";
}

absl::StatusOr<HeuristicSolution> RunHeuristic(HeuristicMethod method,
                                               const Dataset& d,
                                               const ParamBox& box,
                                               const HeuristicOptions& options,
                                               std::uint64_t seed) {
  if (auto s = ValidateHeuristicOptions(options); !s.ok()) return s;
  if (box.dim() != d.num_free()) {
    return absl::InvalidArgumentError("box dimension does not match data");
  }
  const auto start_time = Clock::now();
  MrcEvaluator evaluator(d);
  const FreeObjective objective = [&evaluator](std::span<const double> free) {
    return evaluator.EvaluateFree(free).value();
  };
  const OlsStart ols = ComputeOlsStart(d, box);
  const std::vector<double> start = d.FreePart(ols.beta);

  SearchResult result;
  switch (method) {
    case HeuristicMethod::kNelderMead:
      result = NelderMead(objective, start, box, options);
      break;
    case HeuristicMethod::kNelderMeadMulti:
      result = NelderMeadMultiStart(objective, start, box, options, seed);
      break;
    case HeuristicMethod::kGrid:
      result = IterativeGridSearch(objective, start, box, options);
      break;
    case HeuristicMethod::kSann:
      result = SimulatedAnnealing(objective, start, box, options, seed);
      break;
    case HeuristicMethod::kMcmc:
      result = McmcEstimate(objective, start, box, options,
                            static_cast<double>(d.n()), seed);
      break;
  }

  HeuristicSolution out;
  out.ols_fallback = ols.fallback;
  out.solution.method = HeuristicMethodName(method);
  out.solution.beta = d.ExpandBeta(result.point);
  auto value = MrcObjectiveFast(d, out.solution.beta);
  if (!value.ok()) return value.status();
  out.concordant = value->concordant;
  out.denom = value->denom;
  out.solution.objective = value->value();
  out.solution.evaluations = result.evaluations;
  out.solution.elapsed =
      std::chrono::duration<double>(Clock::now() - start_time).count();
  if (!result.chain_mean.empty()) out.chain_mean = d.ExpandBeta(result.chain_mean);
  return out;
}

}  // namespace mrcmip
