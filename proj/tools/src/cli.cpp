#include "prorata/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "json_config.hpp"
#include "prorata/error.hpp"

namespace prorata::cli {
namespace {

struct OutputArgs {
  std::string output;
  std::string summary_output;
  std::string format = "csv";
};

void add_family(CLI::App* sub, FamilyArgs& f) {
  sub->add_option("--family", f.kind, "payoff family")
      ->check(CLI::IsMember({"power", "cfmm", "table"}))
      ->capture_default_str();
  sub->add_option("--beta", f.beta, "power: exponent in (0, 1)")->capture_default_str();
  sub->add_option("--gamma", f.gamma, "power: linear cost (default 0.05); cfmm: fee (default 0.99)");
  sub->add_option("--r1", f.r1, "cfmm: reserve of the tendered asset")->capture_default_str();
  sub->add_option("--r2", f.r2, "cfmm: reserve of the received asset")->capture_default_str();
  sub->add_option("--c", f.c, "cfmm: external market price")->capture_default_str();
  sub->add_option("--table", f.table, "table: CSV with columns t,f");
}

void add_dynamics(CLI::App* sub, DynamicsArgs& d) {
  sub->add_option("--threshold", d.threshold, "convergence threshold")->capture_default_str();
  sub->add_option("--max-iterations", d.max_iterations, "iteration cap")->capture_default_str();
  sub->add_option("--seed", d.seed, "experiment seed")->capture_default_str();
  sub->add_option("--trials", d.trials, "seeded trials")->capture_default_str();
  sub->add_option("--order", d.order, "update order within a round")
      ->check(CLI::IsMember({"sequential", "simultaneous"}))
      ->capture_default_str();
  sub->add_option("--threads", d.threads, "worker threads, 0 for all cores");
}

void add_output(CLI::App* sub, OutputArgs& o, bool summary) {
  sub->add_option("--output,-o", o.output, "write results here instead of stdout");
  if (summary) sub->add_option("--summary-output", o.summary_output, "write the summary table here");
  sub->add_option("--format", o.format, "csv or table")
      ->check(CLI::IsMember({"csv", "table"}))
      ->capture_default_str();
}

void write_table(const Table& table, const std::string& path, const std::string& format,
                 std::ostream& fallback) {
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw DomainError("cannot write " + path);
  }
  std::ostream& out = path.empty() ? fallback : file;
  if (format == "table") {
    table.write_pretty(out);
  } else {
    table.write_csv(out);
  }
  out.flush();
  if (!out) throw DomainError("write failed for " + (path.empty() ? "stdout" : path));
}

std::string one_line(std::string text) {
  for (char& ch : text) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

int fail(std::ostream& err, const char* code, const std::string& what, int exit_code) {
  err << "error: " << code << ": " << one_line(what) << '\n';
  return exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concave pro-rata games: equilibria, dynamics and price of anarchy", "prorata"};
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of option values; flags on the command line win");
  app.allow_config_extras(false);
  app.fallthrough();
  app.require_subcommand(1);

  OutputArgs output;
  std::function<void()> action;

  EquilibriumArgs eq;
  auto* eq_cmd = app.add_subcommand("equilibrium", "symmetric equilibrium for each n");
  add_family(eq_cmd, eq.family);
  eq_cmd->add_option("--n", eq.n, "player counts")->required();
  eq_cmd->add_flag("--numeric", eq.numeric, "skip closed forms");
  add_output(eq_cmd, output, false);
  eq_cmd->callback([&] { action = [&] { write_table(run_equilibrium(eq), output.output, output.format, out); }; });

  BestResponseArgs br;
  auto* br_cmd = app.add_subcommand("bestresponse", "best response to the others' total");
  add_family(br_cmd, br.family);
  br_cmd->add_option("--y", br.y, "others' total contribution")->required();
  br_cmd->add_option("--budget", br.budget, "upper bound on the response");
  br_cmd->add_flag("--numeric", br.numeric, "skip closed forms");
  add_output(br_cmd, output, false);
  br_cmd->callback([&] { action = [&] { write_table(run_best_response(br), output.output, output.format, out); }; });

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "best-response dynamics, full trace");
  add_family(sim_cmd, sim.family);
  add_dynamics(sim_cmd, sim.dynamics);
  sim_cmd->add_option("--n", sim.n, "players")->capture_default_str();
  sim_cmd->add_option("--scenario", sim.scenario, "constraint on updates")
      ->check(CLI::IsMember({"unconstrained", "bounded", "budgeted"}))
      ->capture_default_str();
  sim_cmd->add_option("--delta", sim.delta, "bounded: per-round step limit")->capture_default_str();
  sim_cmd->add_option("--budgets", sim.budgets, "budgeted: one budget per player");
  sim_cmd->add_option("--start", sim.start, "initial profile (default: uniform on (0, w/n))");
  add_output(sim_cmd, output, true);

  StudyArgs study;
  auto* study_cmd = app.add_subcommand("study", "iterations to equilibrium over seeded trials");
  add_family(study_cmd, study.family);
  add_dynamics(study_cmd, study.dynamics);
  study_cmd->add_option("--n", study.n, "player counts (default: --n-min..--n-max)");
  study_cmd->add_option("--n-min", study.n_min)->capture_default_str();
  study_cmd->add_option("--n-max", study.n_max)->capture_default_str();
  study_cmd->add_option("--deltas", study.deltas, "bounded-update step limits to sweep");
  add_output(study_cmd, output, true);

  WhaleArgs whale;
  auto* whale_cmd = app.add_subcommand("whale", "one unbudgeted player against budgeted fish");
  add_family(whale_cmd, whale.family);
  add_dynamics(whale_cmd, whale.dynamics);
  whale_cmd->add_option("--n-fish", whale.n_fish, "fish counts (default: 1..--max-fish)");
  whale_cmd->add_option("--max-fish", whale.max_fish)->capture_default_str();
  add_output(whale_cmd, output, false);
  whale_cmd->callback([&] { action = [&] { write_table(run_whale(whale), output.output, output.format, out); }; });

  PoaArgs poa_args;
  auto* poa_cmd = app.add_subcommand("poa", "price of anarchy");
  add_family(poa_cmd, poa_args.family);
  poa_cmd->add_option("--n", poa_args.n, "player counts");
  poa_cmd->add_option("--n-max", poa_args.n_max, "tabulate n = 1..n-max and check linear growth");
  poa_cmd->add_option("--n0", poa_args.n0, "growth ratio taken over n >= n0")->capture_default_str();
  add_output(poa_cmd, output, true);

  BatchArgs batch;
  auto* batch_cmd = app.add_subcommand("batch", "clear a batch through a constant-product pool");
  batch_cmd->add_option("--deltas", batch.deltas, "signed trade intents");
  batch_cmd->add_option("--input", batch.input, "CSV with a delta column");
  batch_cmd->add_option("--gamma", batch.gamma, "pool fee scalar")->capture_default_str();
  batch_cmd->add_option("--r1", batch.r1)->capture_default_str();
  batch_cmd->add_option("--r2", batch.r2)->capture_default_str();
  batch_cmd->add_option("--c", batch.c, "external price (with --arbitrage)")->capture_default_str();
  batch_cmd->add_flag("--arbitrage", batch.arbitrage, "report the optimal arbitrage instead");
  add_output(batch_cmd, output, false);
  batch_cmd->callback([&] { action = [&] { write_table(run_batch(batch), output.output, output.format, out); }; });

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check the side conditions on f");
  add_family(verify_cmd, verify.family);
  verify_cmd->add_option("--condition", verify.conditions, "chord, linear-segment, rosen, uniqueness or all")
      ->check(CLI::IsMember({"all", "chord", "linear-segment", "rosen", "uniqueness"}));
  verify_cmd->add_option("--n", verify.n, "players (rosen, uniqueness)")->capture_default_str();
  verify_cmd->add_option("--samples", verify.samples)->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--domain", verify.domain, "upper end of sampled t");
  verify_cmd->add_option("--starts", verify.starts, "uniqueness: random starts")->capture_default_str();
  verify_cmd->add_option("--threshold", verify.threshold)->capture_default_str();
  verify_cmd->add_option("--max-iterations", verify.max_iterations)->capture_default_str();
  add_output(verify_cmd, output, false);
  verify_cmd->callback([&] { action = [&] { write_table(run_verify(verify), output.output, output.format, out); }; });

  ReproduceArgs repro;
  auto* repro_cmd = app.add_subcommand("reproduce", "rerun a figure-class experiment");
  repro_cmd->add_option("figure", repro.figure, "scenario1, scenario2-delta, whale or poa-curve")
      ->required();
  add_family(repro_cmd, repro.family);
  add_dynamics(repro_cmd, repro.dynamics);
  repro_cmd->add_option("--n", repro.n, "scenario2-delta: players")->capture_default_str();
  repro_cmd->add_option("--n-max", repro.n_max, "scenario1 (16) and poa-curve (50)");
  repro_cmd->add_option("--deltas", repro.deltas)->capture_default_str();
  repro_cmd->add_option("--max-fish", repro.max_fish)->capture_default_str();
  add_output(repro_cmd, output, true);

  // Commands with a summary table share this writer.
  const auto with_summary = [&](auto compute) {
    return [&, compute] {
      action = [&, compute] {
        const Output result = compute();
        write_table(result.main, output.output, output.format, out);
        if (result.summary && !output.summary_output.empty()) {
          write_table(*result.summary, output.summary_output, output.format, out);
        }
      };
    };
  };
  sim_cmd->callback(with_summary([&] { return run_simulate(sim); }));
  study_cmd->callback(with_summary([&] { return run_study(study); }));
  poa_cmd->callback(with_summary([&] { return run_poa(poa_args); }));
  repro_cmd->callback(with_summary([&] { return run_reproduce(repro); }));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(err, "config", e.what(), kConfigError);
  }

  try {
    if (action) action();
    return kOk;
  } catch (const DomainError& e) {
    return fail(err, e.code(), e.what(), kConfigError);
  } catch (const NonPositiveNetDemand& e) {
    return fail(err, e.code(), e.what(), kConfigError);
  } catch (const NoEquilibrium& e) {
    return fail(err, e.code(), e.what(), kNoEquilibrium);
  } catch (const NoFiniteRoot& e) {
    return fail(err, e.code(), e.what(), kNoEquilibrium);
  } catch (const NoPositiveRegion& e) {
    return fail(err, e.code(), e.what(), kNoEquilibrium);
  } catch (const Error& e) {
    return fail(err, e.code(), e.what(), kNumericFailure);
  } catch (const std::exception& e) {
    return fail(err, "internal", e.what(), kNumericFailure);
  }
}

}  // namespace prorata::cli
