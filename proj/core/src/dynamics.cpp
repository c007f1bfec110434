#include "prorata/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "prorata/error.hpp"
#include "prorata/random.hpp"

namespace prorata {
namespace {

double others_total(const std::vector<double>& x, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != i) sum += x[j];
  }
  return sum;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_distance(const std::vector<double>& a, double target) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v - target));
  return m;
}

void summarize(StudyResult& result) {
  for (const StudyRow& row : result.rows) {
    auto it = std::find_if(result.summary.begin(), result.summary.end(), [&](const auto& s) {
      return s.n == row.n && s.delta == row.delta;
    });
    if (it == result.summary.end()) {
      result.summary.push_back(StudySummary{row.n, row.delta, 0.0, 0.0, 0, 0});
      it = std::prev(result.summary.end());
    }
    if (row.converged) {
      ++it->converged_trials;
      it->mean_iterations += row.iterations;
    } else {
      ++it->nonconverged_trials;
    }
  }
  for (StudySummary& s : result.summary) {
    if (s.converged_trials == 0) {
      s.mean_iterations = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    s.mean_iterations /= s.converged_trials;
    double ss = 0.0;
    for (const StudyRow& row : result.rows) {
      if (row.converged && row.n == s.n && row.delta == s.delta) {
        ss += (row.iterations - s.mean_iterations) * (row.iterations - s.mean_iterations);
      }
    }
    s.std_iterations = s.converged_trials > 1 ? std::sqrt(ss / (s.converged_trials - 1)) : 0.0;
  }
}

struct StudyCase {
  int n;
  Scenario scenario;
  double delta;
};

StudyResult run_study(const PayoffFamily& family, const std::vector<StudyCase>& cases, int trials,
                      std::uint64_t seed, const StudyOptions& options) {
  if (trials < 1) throw DomainError("study: trials must be at least 1");
  const std::size_t per_case = static_cast<std::size_t>(trials);
  auto rows = detail::run_indexed<StudyRow>(
      cases.size() * per_case, options.threads, [&](std::size_t index) {
        const StudyCase& c = cases[index / per_case];
        const int trial = static_cast<int>(index % per_case);
        GameConfig config(family, c.n);
        config.scenario = c.scenario;
        config.convergence_threshold = options.convergence_threshold;
        config.max_iterations = options.max_iterations;
        config.order = options.order;
        config.stop_rule = StopRule::DistanceToSymmetric;
        config.seed = trial_seed(seed, static_cast<std::uint64_t>(trial));
        config.record_profiles = false;
        const DynamicsTrace trace = simulate(config, init_uniform(config));
        StudyRow row;
        row.n = c.n;
        row.delta = c.delta;
        row.trial = trial;
        row.converged = trace.converged_at.has_value();
        row.iterations = trace.converged_at.value_or(trace.iterations);
        return row;
      });
  StudyResult result;
  result.rows = std::move(rows);
  summarize(result);
  return result;
}

}  // namespace

const char* to_string(UpdateOrder order) noexcept {
  return order == UpdateOrder::Sequential ? "sequential" : "simultaneous";
}

const char* to_string(StopReason reason) noexcept {
  return reason == StopReason::Converged ? "converged" : "iteration-cap";
}

void GameConfig::validate() const {
  if (n < 1) throw DomainError("game: n must be at least 1");
  if (!(convergence_threshold > 0.0)) throw DomainError("game: threshold must be positive");
  if (max_iterations < 0) throw DomainError("game: max_iterations must be nonnegative");
  if (trials < 1) throw DomainError("game: trials must be at least 1");
  if (const auto* b = std::get_if<BoundedUpdate>(&scenario)) {
    if (!(b->delta > 0.0)) throw DomainError("game: delta must be positive");
  }
  if (const auto* b = std::get_if<Budgeted>(&scenario)) {
    if (b->budgets.size() != static_cast<std::size_t>(n)) {
      throw DomainError("game: expected " + std::to_string(n) + " budgets, got " +
                        std::to_string(b->budgets.size()));
    }
    for (double m : b->budgets) {
      if (!(m >= 0.0)) throw DomainError("game: budgets must be nonnegative");
    }
  }
}

StopRule GameConfig::effective_stop_rule() const noexcept {
  if (stop_rule != StopRule::Auto) return stop_rule;
  return std::holds_alternative<Budgeted>(scenario) ? StopRule::StepChange
                                                    : StopRule::DistanceToSymmetric;
}

double StrategyProfile::total() const noexcept {
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum;
}

std::vector<double> StrategyProfile::payoffs(const PayoffFamily& family) const {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = pro_rata_payoff(family, x[i], others_total(x, i));
  }
  return out;
}

DynamicsTrace simulate(const GameConfig& config, const StrategyProfile& initial) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.n);
  if (initial.x.size() != n) {
    throw DomainError("simulate: initial profile has " + std::to_string(initial.x.size()) +
                      " entries, expected " + std::to_string(n));
  }
  for (double v : initial.x) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("simulate: negative initial action");
  }

  const BestResponseSolver respond(config.family);
  const StopRule rule = config.effective_stop_rule();
  const double threshold = config.convergence_threshold;

  DynamicsTrace trace;
  if (rule == StopRule::DistanceToSymmetric) {
    trace.target = solve_symmetric(config.family, config.n).per_player;
  }

  const auto* bounded = std::get_if<BoundedUpdate>(&config.scenario);
  const auto* budgeted = std::get_if<Budgeted>(&config.scenario);
  auto constrain = [&](std::size_t i, double response, double previous) {
    if (budgeted != nullptr) return std::min(response, budgeted->budgets[i]);
    if (bounded != nullptr) {
      response = std::clamp(response, previous - bounded->delta, previous + bounded->delta);
      return std::max(0.0, response);
    }
    return response;
  };

  std::vector<double> x = initial.x;
  if (config.record_profiles) trace.profiles.push_back(initial);

  if (trace.target && max_abs_distance(x, *trace.target) < threshold) {
    trace.converged_at = 0;
    trace.stop_reason = StopReason::Converged;
  }

  std::vector<double> previous(n);
  for (int t = 1; !trace.converged_at && t <= config.max_iterations; ++t) {
    previous = x;
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double>& seen = config.order == UpdateOrder::Sequential ? x : previous;
      const double y = std::max(0.0, others_total(seen, i));
      x[i] = constrain(i, respond.unconstrained(y), previous[i]);
    }
    trace.iterations = t;
    if (config.record_profiles) trace.profiles.push_back(StrategyProfile{x});

    const bool done = rule == StopRule::DistanceToSymmetric
                          ? max_abs_distance(x, *trace.target) < threshold
                          : max_abs_diff(x, previous) < threshold;
    if (done) {
      trace.converged_at = t;
      trace.stop_reason = StopReason::Converged;
    }
  }

  trace.final_profile = StrategyProfile{x};
  trace.final_payoffs = trace.final_profile.payoffs(config.family);
  return trace;
}

StrategyProfile init_uniform(const GameConfig& config) {
  config.validate();
  const PayoffDiagnostics diag = find_root_w(config.family);
  Rng rng(config.seed);
  StrategyProfile profile;
  profile.x.resize(static_cast<std::size_t>(config.n));
  const double upper = diag.w / config.n;
  for (double& v : profile.x) v = rng.uniform(0.0, upper);
  return profile;
}

StudyResult convergence_study(const PayoffFamily& family, std::span<const int> n_values,
                              int trials, std::uint64_t seed, const StudyOptions& options) {
  std::vector<StudyCase> cases;
  const auto* bounded = std::get_if<BoundedUpdate>(&options.scenario);
  for (int n : n_values) cases.push_back({n, options.scenario, bounded ? bounded->delta : 0.0});
  return run_study(family, cases, trials, seed, options);
}

StudyResult delta_study(const PayoffFamily& family, int n, std::span<const double> deltas,
                        int trials, std::uint64_t seed, const StudyOptions& options) {
  std::vector<StudyCase> cases;
  for (double delta : deltas) cases.push_back({n, BoundedUpdate{delta}, delta});
  return run_study(family, cases, trials, seed, options);
}

// ---------------------------------------------------------------------------

WhaleFishTrial run_whale_fish(const PayoffFamily& family, std::span<const double> fish_budgets,
                              const StrategyProfile& initial, const WhaleFishOptions& options) {
  const int n_total = static_cast<int>(fish_budgets.size()) + 1;
  GameConfig config(family, n_total);
  Budgeted budgets;
  budgets.budgets.push_back(std::numeric_limits<double>::infinity());
  budgets.budgets.insert(budgets.budgets.end(), fish_budgets.begin(), fish_budgets.end());
  config.scenario = std::move(budgets);
  config.stop_rule = StopRule::StepChange;
  config.convergence_threshold = options.convergence_threshold;
  config.max_iterations = options.max_iterations;
  config.order = options.order;
  config.record_profiles = false;

  const DynamicsTrace trace = simulate(config, initial);
  const EquilibriumResult eq = solve_symmetric(family, n_total);

  WhaleFishTrial out;
  out.budgets.assign(fish_budgets.begin(), fish_budgets.end());
  out.final_strategy = trace.final_profile.x;
  out.stop_reason = trace.stop_reason;
  out.iterations = trace.iterations;
  out.whale_strategy = out.final_strategy.front();
  out.whale_profit = trace.final_payoffs.front();
  out.pct_strategy_increase = 100.0 * (out.whale_strategy - eq.per_player) / eq.per_player;
  out.pct_profit_increase =
      100.0 * (out.whale_profit - eq.equilibrium_payoff) / eq.equilibrium_payoff;
  out.fish_saturated = true;
  for (std::size_t i = 0; i < fish_budgets.size(); ++i) {
    if (out.final_strategy[i + 1] != fish_budgets[i]) out.fish_saturated = false;
  }
  return out;
}

WhaleFishReport whale_fish_experiment(const PayoffFamily& family, int n_fish, int trials,
                                      std::uint64_t seed, const WhaleFishOptions& options,
                                      std::vector<WhaleFishTrial>* per_trial) {
  if (n_fish < 0) throw DomainError("whale: n_fish must be nonnegative");
  if (trials < 1) throw DomainError("whale: trials must be at least 1");
  const int n_total = n_fish + 1;
  const EquilibriumResult eq = solve_symmetric(family, n_total);
  const double w = eq.diagnostics.w;

  auto results = detail::run_indexed<WhaleFishTrial>(
      static_cast<std::size_t>(trials), options.threads, [&](std::size_t trial) {
        Rng rng(trial_seed(seed, trial));
        std::vector<double> budgets(static_cast<std::size_t>(n_fish));
        for (double& m : budgets) m = rng.uniform(0.0, eq.per_player);
        StrategyProfile start;
        start.x.push_back(rng.uniform(0.0, w / n_total));
        for (double m : budgets) start.x.push_back(rng.uniform(0.0, m));
        return run_whale_fish(family, budgets, start, options);
      });

  WhaleFishReport report;
  report.n_fish = n_fish;
  report.trials = trials;
  report.equilibrium_strategy = eq.per_player;
  report.equilibrium_profit = eq.equilibrium_payoff;
  report.min_whale_excess = std::numeric_limits<double>::infinity();
  for (const WhaleFishTrial& r : results) {
    report.whale_strategy += r.whale_strategy;
    report.whale_profit += r.whale_profit;
    report.pct_strategy_increase += r.pct_strategy_increase;
    report.pct_profit_increase += r.pct_profit_increase;
    report.min_whale_excess = std::min(report.min_whale_excess, r.whale_strategy - eq.per_player);
    report.saturated_trials += r.fish_saturated ? 1 : 0;
    if (r.stop_reason == StopReason::Converged) {
      ++report.converged_trials;
    } else {
      ++report.capped_trials;
    }
  }
  const double count = trials;
  report.whale_strategy /= count;
  report.whale_profit /= count;
  report.pct_strategy_increase /= count;
  report.pct_profit_increase /= count;
  if (trials > 1) {
    double ss_strategy = 0.0;
    double ss_profit = 0.0;
    for (const WhaleFishTrial& r : results) {
      ss_strategy += std::pow(r.pct_strategy_increase - report.pct_strategy_increase, 2);
      ss_profit += std::pow(r.pct_profit_increase - report.pct_profit_increase, 2);
    }
    report.std_pct_strategy_increase = std::sqrt(ss_strategy / (count - 1));
    report.std_pct_profit_increase = std::sqrt(ss_profit / (count - 1));
  }
  if (per_trial != nullptr) *per_trial = std::move(results);
  return report;
}

}  // namespace prorata
