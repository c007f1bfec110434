#include "commands.hpp"

#include <fstream>

#include "prorata/analysis.hpp"
#include "prorata/batch.hpp"
#include "prorata/equilibrium.hpp"
#include "prorata/error.hpp"
#include "prorata/random.hpp"
#include "prorata/verify.hpp"

namespace prorata::cli {
namespace {

Table read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return Table::read_csv(in);
}

std::vector<double> column_values(const Table& table, std::size_t column) {
  std::vector<double> out;
  out.reserve(table.rows().size());
  for (const auto& row : table.rows()) out.push_back(parse_number(row[column]));
  return out;
}

std::size_t find_column(const Table& table, const std::string& name, std::size_t fallback) {
  for (std::size_t k = 0; k < table.columns().size(); ++k) {
    if (table.columns()[k] == name) return k;
  }
  if (fallback >= table.columns().size()) {
    throw DomainError("table has no column '" + name + "'");
  }
  return fallback;
}

std::vector<int> range(int lo, int hi) {
  if (lo > hi) throw DomainError("empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

StudyOptions study_options(const DynamicsArgs& d) {
  StudyOptions opts;
  opts.convergence_threshold = d.threshold;
  opts.max_iterations = d.max_iterations;
  opts.order = parse_order(d.order);
  opts.threads = d.threads;
  return opts;
}

Output study_output(const StudyResult& result, bool with_delta) {
  std::vector<std::string> cols{"n"};
  if (with_delta) cols.push_back("delta");
  for (const char* c : {"trial", "iterations", "converged"}) cols.emplace_back(c);
  Output out{Table(cols), std::nullopt};
  for (const StudyRow& r : result.rows) {
    std::vector<std::string> cells{format_number(r.n)};
    if (with_delta) cells.push_back(format_number(r.delta));
    cells.push_back(format_number(r.trial));
    cells.push_back(format_number(r.iterations));
    cells.push_back(format_bool(r.converged));
    out.main.add_row(std::move(cells));
  }

  std::vector<std::string> scols{"n"};
  if (with_delta) scols.push_back("delta");
  for (const char* c : {"mean_iterations", "std_iterations", "converged_trials",
                        "nonconverged_trials"}) {
    scols.emplace_back(c);
  }
  Table summary(scols);
  for (const StudySummary& s : result.summary) {
    std::vector<std::string> cells{format_number(s.n)};
    if (with_delta) cells.push_back(format_number(s.delta));
    cells.push_back(format_number(s.mean_iterations));
    cells.push_back(format_number(s.std_iterations));
    cells.push_back(format_number(s.converged_trials));
    cells.push_back(format_number(s.nonconverged_trials));
    summary.add_row(std::move(cells));
  }
  out.summary = std::move(summary);
  return out;
}

Table poa_table(const std::vector<PoaReport>& rows) {
  Table t({"n", "eq_payoff", "fair_payoff", "poa"});
  for (const PoaReport& r : rows) {
    t.add_row({format_number(r.n), format_number(r.equilibrium_payoff),
               format_number(r.fair_optimal_payoff), format_number(r.poa)});
  }
  return t;
}

Output poa_growth_output(const PayoffFamily& family, int n_max, int n0) {
  const PoaGrowthReport g = poa_growth_check(family, n_max, n0);
  Output out{poa_table(g.rows), std::nullopt};
  Table summary({"n_max", "nondecreasing", "n0", "min_ratio", "argmin_ratio_n", "linear_growth"});
  summary.add_row({format_number(n_max), format_bool(g.nondecreasing), format_number(g.n0),
                   format_number(g.min_ratio), format_number(g.argmin_ratio_n),
                   format_bool(g.linear_growth)});
  out.summary = std::move(summary);
  return out;
}

Table whale_rows(const PayoffFamily& family, const std::vector<int>& n_fish,
                 const DynamicsArgs& d) {
  WhaleFishOptions opts;
  opts.convergence_threshold = d.threshold;
  opts.max_iterations = d.max_iterations;
  opts.order = parse_order(d.order);
  opts.threads = d.threads;
  Table t({"n_fish", "equilibrium_strategy", "equilibrium_profit", "whale_strategy",
           "whale_profit", "pct_strategy_increase", "pct_profit_increase",
           "std_pct_strategy_increase", "std_pct_profit_increase", "min_whale_excess",
           "saturated_trials", "converged_trials", "capped_trials"});
  for (int fish : n_fish) {
    const WhaleFishReport r = whale_fish_experiment(family, fish, d.trials, d.seed, opts);
    t.add_row({format_number(r.n_fish), format_number(r.equilibrium_strategy),
               format_number(r.equilibrium_profit), format_number(r.whale_strategy),
               format_number(r.whale_profit), format_number(r.pct_strategy_increase),
               format_number(r.pct_profit_increase), format_number(r.std_pct_strategy_increase),
               format_number(r.std_pct_profit_increase), format_number(r.min_whale_excess),
               format_number(r.saturated_trials), format_number(r.converged_trials),
               format_number(r.capped_trials)});
  }
  return t;
}

}  // namespace

PayoffFamily make_family(const FamilyArgs& a) {
  if (a.kind == "power") {
    return PayoffFamily::power({a.beta, std::isnan(a.gamma) ? 0.05 : a.gamma});
  }
  if (a.kind == "cfmm") {
    return PayoffFamily::cfmm({std::isnan(a.gamma) ? 0.99 : a.gamma, a.r1, a.r2, a.c});
  }
  if (a.kind == "table") {
    if (a.table.empty()) throw DomainError("--family table needs --table FILE");
    const Table t = read_csv_file(a.table);
    return PayoffFamily::tabulated(column_values(t, find_column(t, "t", 0)),
                                   column_values(t, find_column(t, "f", 1)));
  }
  throw DomainError("unknown family '" + a.kind + "'");
}

UpdateOrder parse_order(const std::string& text) {
  if (text == "sequential") return UpdateOrder::Sequential;
  if (text == "simultaneous") return UpdateOrder::Simultaneous;
  throw DomainError("unknown update order '" + text + "'");
}

Table run_equilibrium(const EquilibriumArgs& args) {
  const PayoffFamily family = make_family(args.family);
  EquilibriumOptions opts;
  if (args.numeric) opts.path = SolvePath::Numeric;
  Table t({"n", "q", "per_player", "equilibrium_payoff", "foc_residual", "method", "w", "sup_f",
           "argmax"});
  for (int n : args.n) {
    const EquilibriumResult r = solve_symmetric(family, n, opts);
    t.add_row({format_number(n), format_number(r.q), format_number(r.per_player),
               format_number(r.equilibrium_payoff), format_number(r.foc_residual),
               to_string(r.method), format_number(r.diagnostics.w),
               format_number(r.diagnostics.sup_f), format_number(r.diagnostics.argmax)});
  }
  return t;
}

Table run_best_response(const BestResponseArgs& args) {
  EquilibriumOptions opts;
  if (args.numeric) opts.path = SolvePath::Numeric;
  const BestResponseSolver solve(make_family(args.family), opts);
  Table t({"y", "budget", "x", "payoff", "at_boundary"});
  for (double y : args.y) {
    const BestResponseResult r = solve(y, args.budget);
    t.add_row({format_number(y), format_number(args.budget), format_number(r.x),
               format_number(r.payoff), to_string(r.at_boundary)});
  }
  return t;
}

Output run_simulate(const SimulateArgs& args) {
  const PayoffFamily family = make_family(args.family);
  GameConfig config(family, args.n);
  if (args.scenario == "bounded") {
    config.scenario = BoundedUpdate{args.delta};
  } else if (args.scenario == "budgeted") {
    config.scenario = Budgeted{args.budgets};
  } else if (args.scenario != "unconstrained") {
    throw DomainError("unknown scenario '" + args.scenario + "'");
  }
  config.convergence_threshold = args.dynamics.threshold;
  config.max_iterations = args.dynamics.max_iterations;
  config.order = parse_order(args.dynamics.order);
  if (args.dynamics.trials < 1) throw DomainError("--trials must be at least 1");

  Output out{Table({"trial", "iteration", "player", "strategy", "payoff"}), std::nullopt};
  Table summary({"trial", "converged", "converged_at", "iterations", "stop_reason"});
  for (int trial = 0; trial < args.dynamics.trials; ++trial) {
    config.seed = trial_seed(args.dynamics.seed, static_cast<std::uint64_t>(trial));
    const StrategyProfile start =
        args.start.empty() ? init_uniform(config) : StrategyProfile{args.start};
    const DynamicsTrace trace = simulate(config, start);
    for (std::size_t t = 0; t < trace.profiles.size(); ++t) {
      const StrategyProfile& p = trace.profiles[t];
      const std::vector<double> payoff = p.payoffs(family);
      for (std::size_t i = 0; i < p.x.size(); ++i) {
        out.main.add_row({format_number(trial), format_number(static_cast<long long>(t)),
                          format_number(static_cast<long long>(i)), format_number(p.x[i]),
                          format_number(payoff[i])});
      }
    }
    summary.add_row({format_number(trial), format_bool(trace.converged_at.has_value()),
                     trace.converged_at ? format_number(*trace.converged_at) : "-1",
                     format_number(trace.iterations), to_string(trace.stop_reason)});
  }
  out.summary = std::move(summary);
  return out;
}

Output run_study(const StudyArgs& args) {
  const PayoffFamily family = make_family(args.family);
  const std::vector<int> ns = args.n.empty() ? range(args.n_min, args.n_max) : args.n;
  const StudyOptions opts = study_options(args.dynamics);
  if (args.deltas.empty()) {
    return study_output(
        convergence_study(family, ns, args.dynamics.trials, args.dynamics.seed, opts), false);
  }
  StudyResult all;
  for (int n : ns) {
    StudyResult r = delta_study(family, n, args.deltas, args.dynamics.trials, args.dynamics.seed,
                                opts);
    all.rows.insert(all.rows.end(), r.rows.begin(), r.rows.end());
    all.summary.insert(all.summary.end(), r.summary.begin(), r.summary.end());
  }
  return study_output(all, true);
}

Table run_whale(const WhaleArgs& args) {
  const std::vector<int> fish = args.n_fish.empty() ? range(1, args.max_fish) : args.n_fish;
  return whale_rows(make_family(args.family), fish, args.dynamics);
}

Output run_poa(const PoaArgs& args) {
  const PayoffFamily family = make_family(args.family);
  if (args.n_max > 0) return poa_growth_output(family, args.n_max, args.n0);
  if (args.n.empty()) throw DomainError("poa needs --n or --n-max");
  std::vector<PoaReport> rows;
  for (int n : args.n) rows.push_back(poa(family, n));
  return {poa_table(rows), std::nullopt};
}

Table run_batch(const BatchArgs& args) {
  const CfmmPool pool{args.gamma, args.r1, args.r2};
  if (args.arbitrage) {
    pool.validate();
    const ArbitrageSolution s = optimal_arbitrage(pool, args.c);
    Table t({"c", "t_star", "marginal_price", "payoff", "bracket_capped"});
    t.add_row({format_number(args.c), format_number(s.t_star),
               format_number(pool.forward_derivative(s.t_star)),
               format_number(pool.forward(s.t_star) - args.c * s.t_star),
               format_bool(s.bracket_capped)});
    return t;
  }
  std::vector<double> deltas = args.deltas;
  if (!args.input.empty()) {
    if (!deltas.empty()) throw DomainError("pass either --deltas or --input, not both");
    const Table in = read_csv_file(args.input);
    deltas = column_values(in, find_column(in, "delta", 0));
  }
  const BatchOutcome r = clear({deltas, pool});
  Table t({"trader_id", "delta", "residual", "received_b"});
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    t.add_row({format_number(static_cast<long long>(i)), format_number(deltas[i]),
               format_number(r.residuals[i]), format_number(r.received_b[i])});
  }
  return t;
}

Table run_verify(const VerifyArgs& args) {
  const PayoffFamily family = make_family(args.family);
  std::vector<std::string> wanted;
  for (const std::string& c : args.conditions) {
    if (c == "all") {
      for (const char* name : {"chord", "linear-segment", "rosen", "uniqueness"}) {
        wanted.emplace_back(name);
      }
    } else {
      wanted.push_back(c);
    }
  }
  const std::optional<double> domain =
      std::isnan(args.domain) ? std::nullopt : std::optional<double>(args.domain);

  Table t({"condition", "holds", "witness_a", "witness_b", "lhs", "rhs", "value", "samples",
           "domain", "note"});
  for (const std::string& c : wanted) {
    ConditionReport r;
    if (c == "chord") {
      ChordOptions opts;
      opts.samples = args.samples;
      opts.seed = args.seed;
      opts.domain = domain;
      r = check_chord_condition(family, opts);
    } else if (c == "linear-segment") {
      LinearSegmentOptions opts;
      opts.domain = domain;
      r = detect_linear_segment_at_zero(family, opts);
    } else if (c == "rosen") {
      r = rosen_probe(family, args.n);
    } else if (c == "uniqueness") {
      UniquenessOptions opts;
      opts.starts = args.starts;
      opts.seed = args.seed;
      opts.convergence_threshold = args.threshold;
      opts.max_iterations = args.max_iterations;
      r = check_multistart_uniqueness(family, args.n, opts);
    } else {
      throw DomainError("unknown condition '" + c + "'");
    }
    // Failing checks report the first counterexample; passing ones the tightest sample.
    Witness w{NAN, NAN, NAN, NAN};
    if (!r.witnesses.empty()) w = r.witnesses.front();
    if (r.condition == Condition::MultiStartUniqueness) {
      for (const Witness& cand : r.witnesses) {
        if (cand.lhs >= w.lhs || std::isnan(w.lhs)) w = cand;
      }
    }
    const bool has_value = r.condition == Condition::RosenMonotoneProbe;
    t.add_row({to_string(r.condition), format_bool(r.holds), format_number(w.a),
               format_number(w.b), format_number(w.lhs), format_number(w.rhs),
               format_number(has_value ? r.value : NAN), format_number(r.samples),
               format_number(r.domain), r.note});
  }
  return t;
}

Output run_reproduce(const ReproduceArgs& args) {
  std::string figure = args.figure;
  if (figure.rfind("fig-", 0) == 0) figure = figure.substr(4);
  const PayoffFamily family = make_family(args.family);
  if (figure == "scenario1") {
    const std::vector<int> ns = range(2, args.n_max > 0 ? args.n_max : 16);
    return study_output(convergence_study(family, ns, args.dynamics.trials, args.dynamics.seed,
                                          study_options(args.dynamics)),
                        false);
  }
  if (figure == "scenario2-delta") {
    return study_output(delta_study(family, args.n, args.deltas, args.dynamics.trials,
                                    args.dynamics.seed, study_options(args.dynamics)),
                        true);
  }
  if (figure == "whale") {
    return {whale_rows(family, range(1, args.max_fish), args.dynamics), std::nullopt};
  }
  if (figure == "poa-curve") {
    return poa_growth_output(family, args.n_max > 0 ? args.n_max : 50, 10);
  }
  throw DomainError("unknown figure '" + args.figure +
                    "' (expected scenario1, scenario2-delta, whale or poa-curve)");
}

}  // namespace prorata::cli
