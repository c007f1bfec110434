#pragma once

// Iterated best-response play.
//
// In every round each player best-responds to the others' contributions,
// optionally subject to a per-round step bound or a budget. One iteration is
// one full round over all players.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "prorata/equilibrium.hpp"
#include "prorata/payoff.hpp"

namespace prorata {

struct Unconstrained {};

/// |x_i^t - x_i^{t-1}| <= delta.
struct BoundedUpdate {
  double delta = 1.0;
};

/// x_i^t in [0, budgets[i]]; +inf for an unbudgeted player.
struct Budgeted {
  std::vector<double> budgets;
};

using Scenario = std::variant<Unconstrained, BoundedUpdate, Budgeted>;

enum class UpdateOrder {
  // Players update one after another within a round, each seeing the
  // contributions already chosen this round.
  Sequential,
  // Every player responds to the previous round's profile.
  Simultaneous,
};

enum class StopRule {
  Auto,                 // DistanceToSymmetric unless the scenario is Budgeted
  DistanceToSymmetric,  // max_i |x_i - q/n| < threshold
  StepChange,           // max_i |x_i^t - x_i^{t-1}| < threshold
};

enum class StopReason { Converged, IterationCap };

const char* to_string(UpdateOrder order) noexcept;
const char* to_string(StopReason reason) noexcept;

struct GameConfig {
  GameConfig(PayoffFamily family_, int n_) : family(std::move(family_)), n(n_) {}

  PayoffFamily family;
  int n;
  Scenario scenario = Unconstrained{};
  double convergence_threshold = 0.1;
  int max_iterations = 10000;
  std::uint64_t seed = 1;
  int trials = 1;
  UpdateOrder order = UpdateOrder::Sequential;
  StopRule stop_rule = StopRule::Auto;
  bool record_profiles = true;

  /// Throws DomainError on n < 1, delta <= 0, negative or missized budgets,
  /// threshold <= 0, max_iterations < 0 or trials < 1.
  void validate() const;
  StopRule effective_stop_rule() const noexcept;
};

struct StrategyProfile {
  std::vector<double> x;

  double total() const noexcept;
  std::vector<double> payoffs(const PayoffFamily& family) const;
};

struct DynamicsTrace {
  std::vector<StrategyProfile> profiles;  // profiles[0] is the start
  std::optional<int> converged_at;
  StopReason stop_reason = StopReason::IterationCap;
  int iterations = 0;
  StrategyProfile final_profile;
  std::vector<double> final_payoffs;
  std::optional<double> target;  // q/n when the stop rule needs it
};

/// Runs best-response dynamics from `initial` until the stop rule fires or
/// max_iterations rounds have run. Throws NoEquilibrium when the distance
/// stop rule needs an equilibrium that does not exist.
DynamicsTrace simulate(const GameConfig& config, const StrategyProfile& initial);

/// Start profile with each x_i ~ U(0, w/n), drawn from config.seed.
StrategyProfile init_uniform(const GameConfig& config);

// ---------------------------------------------------------------------------
// Convergence studies

struct StudyOptions {
  Scenario scenario = Unconstrained{};
  double convergence_threshold = 0.1;
  int max_iterations = 10000;
  UpdateOrder order = UpdateOrder::Sequential;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct StudyRow {
  int n = 0;
  double delta = 0.0;  // 0 when the scenario is not BoundedUpdate
  int trial = 0;
  int iterations = 0;  // converged_at, or the cap when not converged
  bool converged = false;
};

struct StudySummary {
  int n = 0;
  double delta = 0.0;
  double mean_iterations = 0.0;  // over converged trials only
  double std_iterations = 0.0;
  int converged_trials = 0;
  int nonconverged_trials = 0;
};

struct StudyResult {
  std::vector<StudyRow> rows;
  std::vector<StudySummary> summary;
};

/// For each n, runs `trials` seeded simulations from init_uniform starts and
/// averages the iteration at which play came within the threshold of q/n.
/// Trial k uses trial_seed(seed, k) for every n.
StudyResult convergence_study(const PayoffFamily& family, std::span<const int> n_values,
                              int trials, std::uint64_t seed, const StudyOptions& options = {});

/// Iterations to equilibrium under BoundedUpdate for each delta, n fixed.
StudyResult delta_study(const PayoffFamily& family, int n, std::span<const double> deltas,
                        int trials, std::uint64_t seed, const StudyOptions& options = {});

// ---------------------------------------------------------------------------
// Whale and fish: one unbudgeted player (index 0) against budget-limited ones.

struct WhaleFishOptions {
  double convergence_threshold = 0.1;
  int max_iterations = 10000;
  UpdateOrder order = UpdateOrder::Sequential;
  unsigned threads = 0;
};

struct WhaleFishTrial {
  double whale_strategy = 0.0;
  double whale_profit = 0.0;
  double pct_strategy_increase = 0.0;
  double pct_profit_increase = 0.0;
  bool fish_saturated = false;  // every fish ended at its budget
  StopReason stop_reason = StopReason::IterationCap;
  int iterations = 0;
  std::vector<double> budgets;         // fish budgets
  std::vector<double> final_strategy;  // whale first
};

struct WhaleFishReport {
  int n_fish = 0;
  int trials = 0;
  double equilibrium_strategy = 0.0;  // q / (n_fish + 1)
  double equilibrium_profit = 0.0;    // f(q) / (n_fish + 1)
  double whale_strategy = 0.0;        // means over trials
  double whale_profit = 0.0;
  double pct_strategy_increase = 0.0;
  double pct_profit_increase = 0.0;
  double std_pct_strategy_increase = 0.0;
  double std_pct_profit_increase = 0.0;
  double min_whale_excess = 0.0;  // min over trials of whale - q/(n_fish+1)
  int saturated_trials = 0;
  int converged_trials = 0;
  int capped_trials = 0;
};

/// One whale/fish game with the given fish budgets and start profile (whale
/// first). Stops when no player moves by the threshold or more in a round.
WhaleFishTrial run_whale_fish(const PayoffFamily& family, std::span<const double> fish_budgets,
                              const StrategyProfile& initial,
                              const WhaleFishOptions& options = {});

/// Fish budgets ~ U(0, q/n), fish starts ~ U(0, M_i), whale start ~ U(0, w/n)
/// with n = n_fish + 1; averaged over `trials` seeded trials.
WhaleFishReport whale_fish_experiment(const PayoffFamily& family, int n_fish, int trials,
                                      std::uint64_t seed, const WhaleFishOptions& options = {},
                                      std::vector<WhaleFishTrial>* per_trial = nullptr);

}  // namespace prorata
