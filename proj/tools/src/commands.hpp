#pragma once

// Subcommand bodies. Each takes plain argument structs filled in by the
// parser and returns the tables to print, so tests can call them directly.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "prorata/dynamics.hpp"
#include "prorata/payoff.hpp"
#include "prorata/table.hpp"

namespace prorata::cli {

struct FamilyArgs {
  std::string kind = "cfmm";  // power | cfmm | table
  double beta = 0.5;
  double gamma = std::numeric_limits<double>::quiet_NaN();  // 0.05 for power, 0.99 for cfmm
  double r1 = 200.0;
  double r2 = 250.0;
  double c = 1.0;
  std::string table;  // CSV with columns t,f
};

PayoffFamily make_family(const FamilyArgs& args);

struct DynamicsArgs {
  double threshold = 0.1;
  int max_iterations = 10000;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string order = "sequential";
  unsigned threads = 0;
};

UpdateOrder parse_order(const std::string& text);

struct Output {
  Table main;
  std::optional<Table> summary;
};

struct EquilibriumArgs {
  FamilyArgs family;
  std::vector<int> n;
  bool numeric = false;
};
Table run_equilibrium(const EquilibriumArgs& args);

struct BestResponseArgs {
  FamilyArgs family;
  std::vector<double> y;
  double budget = std::numeric_limits<double>::infinity();
  bool numeric = false;
};
Table run_best_response(const BestResponseArgs& args);

struct SimulateArgs {
  SimulateArgs() { dynamics.trials = 1; }

  FamilyArgs family;
  DynamicsArgs dynamics;
  int n = 2;
  std::string scenario = "unconstrained";  // unconstrained | bounded | budgeted
  double delta = 1.0;
  std::vector<double> budgets;
  std::vector<double> start;
};
Output run_simulate(const SimulateArgs& args);

struct StudyArgs {
  FamilyArgs family;
  DynamicsArgs dynamics;
  std::vector<int> n;
  int n_min = 2;
  int n_max = 16;
  std::vector<double> deltas;  // non-empty: bounded updates, one sweep per n
};
Output run_study(const StudyArgs& args);

struct WhaleArgs {
  FamilyArgs family;
  DynamicsArgs dynamics;
  std::vector<int> n_fish;
  int max_fish = 20;
};
Table run_whale(const WhaleArgs& args);

struct PoaArgs {
  FamilyArgs family;
  std::vector<int> n;
  int n_max = 0;
  int n0 = 10;
};
Output run_poa(const PoaArgs& args);

struct BatchArgs {
  std::vector<double> deltas;
  std::string input;  // CSV with a delta column
  double gamma = 0.99;
  double r1 = 200.0;
  double r2 = 250.0;
  double c = 1.0;
  bool arbitrage = false;
};
Table run_batch(const BatchArgs& args);

struct VerifyArgs {
  FamilyArgs family;
  std::vector<std::string> conditions{"all"};
  int n = 2;
  int samples = 10000;
  std::uint64_t seed = 1;
  double domain = std::numeric_limits<double>::quiet_NaN();
  int starts = 20;
  double threshold = 0.1;
  int max_iterations = 10000;
};
Table run_verify(const VerifyArgs& args);

struct ReproduceArgs {
  std::string figure;  // scenario1 | scenario2-delta | whale | poa-curve, "fig-" prefix allowed
  FamilyArgs family;
  DynamicsArgs dynamics;
  int n = 10;
  int n_max = 0;  // 0: 16 for scenario1, 50 for poa-curve
  std::vector<double> deltas{0.5, 1.0, 2.0, 5.0, 10.0};
  int max_fish = 20;
};
Output run_reproduce(const ReproduceArgs& args);

}  // namespace prorata::cli
