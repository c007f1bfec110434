// Acceptance checks, one PASS/FAIL line each. Exit status is the number of
// failures (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prorata/prorata.hpp"

#ifdef PRORATA_ACCEPTANCE_CLI
#include "prorata/cli.hpp"
#endif

namespace {

using namespace prorata;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Verdict()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("threw: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const CfmmParams kCfmm{0.99, 200.0, 250.0, 1.0};
const PowerParams kPower{0.5, 0.05};

PayoffFamily cfmm() { return PayoffFamily::cfmm(kCfmm); }
PayoffFamily power() { return PayoffFamily::power(kPower); }

// Larger root of the CFMM first-order quadratic, in long double.
double cfmm_oracle(int n) {
  const long double g = kCfmm.gamma, r1 = kCfmm.r1, r2 = kCfmm.r2, c = kCfmm.c, nn = n;
  const long double a = c * nn * g * g;
  const long double b = g * g * r2 + 2 * c * nn * r1 * g - g * g * nn * r2;
  const long double k = c * nn * r1 * r1 - g * nn * r1 * r2;
  const long double root = (-b + std::sqrt(b * b - 4 * a * k)) / (2 * a);
  return static_cast<double>(root);
}

double power_oracle(double beta, double gamma, int n) {
  return std::pow((beta + n - 1.0) / (n * gamma), 1.0 / (1.0 - beta));
}

// Every equilibrium computed by criteria 1 and 2, kept for 3 and 4.
struct Computed {
  PayoffFamily family;
  EquilibriumResult eq;
};
std::vector<Computed> computed;

EquilibriumOptions numeric_path() {
  EquilibriumOptions o;
  o.path = SolvePath::Numeric;
  return o;
}

Verdict closed_form_power() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int cases = 0;
  for (double beta : {0.3, 0.5, 0.7}) {
    for (double gamma : {0.01, 0.05, 0.5}) {
      const PayoffFamily f = PayoffFamily::power({beta, gamma});
      for (int n = 1; n <= 100; ++n) {
        const EquilibriumResult eq = solve_symmetric(f, n, numeric_path());
        const double expected = power_oracle(beta, gamma, n);
        worst = std::max(worst, std::abs(eq.q - expected) / expected);
        computed.push_back({f, eq});
        ++cases;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && secs < 5.0,
          fmt("max rel err %.3g over %g cases, %.3g s (limit 5 s)", worst, cases, secs)};
}

Verdict closed_form_cfmm() {
  const PayoffFamily f = cfmm();
  double worst = 0.0;
  double q1 = 0.0;
  for (int n = 1; n <= 100; ++n) {
    const EquilibriumResult eq = solve_symmetric(f, n, numeric_path());
    const double expected = cfmm_oracle(n);
    worst = std::max(worst, std::abs(eq.q - expected) / expected);
    if (n == 1) q1 = eq.q;
    computed.push_back({f, eq});
  }
  const bool near_quoted = std::abs(q1 - 22.711) < 1e-2;
  return {worst <= 1e-8 && near_quoted,
          fmt("max rel err %.3g for n=1..100; q(1)=%.9g (quoted 22.711)", worst, q1)};
}

Verdict foc_residuals() {
  double worst = 0.0;
  for (const Computed& c : computed) {
    const double q = c.eq.q;
    const int n = c.eq.n;
    const double fq = c.family(q);
    const double residual = std::abs((n - 1) * fq + q * c.family.derivative(q));
    worst = std::max(worst, residual / std::max(1.0, fq));
  }
  return {!computed.empty() && worst <= 1e-6,
          fmt("max |(n-1)f(q)+qf'(q)|/max(1,f(q)) = %.3g over %g equilibria", worst,
              static_cast<double>(computed.size()))};
}

Verdict no_profitable_deviation() {
  std::mt19937_64 gen(20240601);
  double worst_gain = -INFINITY;
  long long trials = 0;
  for (const Computed& c : computed) {
    const double x = c.eq.per_player;
    const double y = c.eq.q - x;
    const double w = c.eq.diagnostics.w;
    const double base = pro_rata_payoff(c.family, x, y);
    std::uniform_real_distribution<double> wide(0.0, w - y);
    std::uniform_real_distribution<double> local(-0.01, 0.01);
    for (int k = 0; k < 1000; ++k) {
      // Half global, half within 1% of the equilibrium strategy.
      const double dev = (k % 2 == 0) ? wide(gen) : x * (1.0 + local(gen));
      worst_gain = std::max(worst_gain, pro_rata_payoff(c.family, dev, y) - base);
      ++trials;
    }
  }
  return {worst_gain <= 1e-9,
          fmt("largest gain %.3g over %g deviations", worst_gain, static_cast<double>(trials))};
}

Verdict poa_power() {
  double worst = 0.0;
  for (double beta : {0.3, 0.5, 0.7}) {
    for (double gamma : {0.01, 0.05, 0.5}) {
      const PayoffFamily f = PayoffFamily::power({beta, gamma});
      for (int n = 1; n <= 100; ++n) {
        const double expected = n * std::pow(beta * n / (n + beta - 1.0), beta / (1.0 - beta));
        const PoaReport r = poa(f, n, numeric_path());
        worst = std::max(worst, std::abs(r.poa - expected) / expected);
      }
    }
  }
  const double one = poa(power(), 1).poa;
  const double ratio = poa(power(), 100).poa / 100.0;
  return {worst <= 1e-8 && std::abs(one - 1.0) <= 1e-12 && std::abs(ratio - 0.5) <= 0.01,
          fmt("max rel err %.3g; poa(1)=%.15g; poa(100)/100=%.6g", worst, one, ratio)};
}

Verdict omega_n() {
  const PoaGrowthReport p = poa_growth_check(power(), 100, 10);
  const PoaGrowthReport c = poa_growth_check(cfmm(), 100, 10);
  std::string detail =
      fmt("power: nondecreasing=%g inf poa/n=%.4g (n=%g); ", p.nondecreasing, p.min_ratio,
          p.argmin_ratio_n) +
      fmt("cfmm: nondecreasing=%g inf poa/n=%.4g (n=%g)", c.nondecreasing, c.min_ratio,
          c.argmin_ratio_n);
  return {p.linear_growth && c.linear_growth, detail};
}

Verdict scenario1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> ns;
  for (int n = 2; n <= 16; ++n) ns.push_back(n);
  bool ok = true;
  std::string detail;
  for (const auto& [name, family] : {std::pair{"cfmm", cfmm()}, std::pair{"power", power()}}) {
    const StudyResult r = convergence_study(family, ns, 100, 1);
    bool finite = true;
    bool monotone = true;
    for (std::size_t k = 0; k < r.summary.size(); ++k) {
      finite = finite && std::isfinite(r.summary[k].mean_iterations) &&
               r.summary[k].nonconverged_trials == 0;
      if (k > 0) monotone = monotone && r.summary[k].mean_iterations >= r.summary[k - 1].mean_iterations;
    }
    const double m4 = r.summary[2].mean_iterations;
    const double m16 = r.summary.back().mean_iterations;
    const bool super = m16 / m4 > 4.0;
    ok = ok && finite && monotone && super;
    detail += std::string(name) + fmt(": mean(4)=%.4g mean(16)=%.4g ratio=%.3g", m4, m16, m16 / m4) +
              (finite ? "" : " NONFINITE") + (monotone ? "" : " NONMONOTONE") + "; ";
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 60.0;
  return {ok, detail + fmt("%.3g s (limit 60 s)", secs)};
}

Verdict scenario2() {
  const std::vector<double> deltas{0.5, 1.0, 2.0, 5.0, 10.0};
  const StudyResult r = delta_study(power(), 10, deltas, 100, 1);
  bool ok = true;
  std::string detail = "means:";
  for (std::size_t k = 0; k < r.summary.size(); ++k) {
    detail += fmt(" %.4g", r.summary[k].mean_iterations);
    ok = ok && r.summary[k].nonconverged_trials == 0;
    if (k > 0) ok = ok && r.summary[k].mean_iterations < r.summary[k - 1].mean_iterations;
  }
  return {ok, detail + " for delta 0.5,1,2,5,10"};
}

Verdict whale_fish() {
  bool ok = true;
  std::string detail;
  for (const auto& [name, family] : {std::pair{"cfmm", cfmm()}, std::pair{"power", power()}}) {
    double last_s = -INFINITY;
    double last_p = -INFINITY;
    bool saturated = true, positive = true, monotone = true, mean_above = true;
    int below = 0, trials = 0, below_fish = 0;
    double worst = 0.0;
    double s20 = 0.0, p20 = 0.0;
    for (int fish = 1; fish <= 20; ++fish) {
      std::vector<WhaleFishTrial> per_trial;
      const WhaleFishReport r = whale_fish_experiment(family, fish, 100, 1, {}, &per_trial);
      saturated = saturated && r.saturated_trials == r.trials;
      positive = positive && r.pct_strategy_increase > 0.0 && r.pct_profit_increase > 0.0;
      monotone = monotone && r.pct_strategy_increase >= last_s && r.pct_profit_increase >= last_p;
      mean_above = mean_above && r.whale_strategy >= r.equilibrium_strategy;
      // Checked per trial at the stopping iterate.
      for (const WhaleFishTrial& t : per_trial) {
        ++trials;
        const double excess = t.whale_strategy - r.equilibrium_strategy;
        if (excess < 0.0) {
          ++below;
          below_fish = fish;
          worst = std::min(worst, excess);
        }
      }
      last_s = r.pct_strategy_increase;
      last_p = r.pct_profit_increase;
      s20 = r.pct_strategy_increase;
      p20 = r.pct_profit_increase;
    }
    ok = ok && saturated && positive && monotone && below == 0;
    detail += std::string(name) + fmt(": at 20 fish +%.3g%% strategy +%.3g%% profit", s20, p20) +
              (saturated ? "" : " UNSATURATED") + (positive ? "" : " NONPOSITIVE") +
              (monotone ? "" : " NONMONOTONE");
    if (below > 0) {
      detail += fmt(" BELOW q/n in %g of %g trials (worst %.4g", below, trials, worst) +
                fmt(", last at n_fish=%g; trial means above q/n: %g)", below_fish, mean_above);
    }
    detail += "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Verdict batch_invariants() {
  const CfmmPool pool{0.99, 200.0, 250.0};
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> mixed(-10.0, 10.0);
  std::uniform_real_distribution<double> positive(0.0, 10.0);
  std::uniform_int_distribution<int> size(1, 20);
  int checked = 0;
  int bad = 0;
  while (checked < 1000) {
    std::vector<double> d(static_cast<std::size_t>(size(gen)));
    const bool all_positive = checked % 4 == 0;
    for (double& v : d) v = all_positive ? positive(gen) : mixed(gen);
    const double net = std::accumulate(d.begin(), d.end(), 0.0);
    if (!(net > 0.0)) continue;
    ++checked;
    const BatchOutcome out = clear({d, pool});
    const double total = std::accumulate(out.residuals.begin(), out.residuals.end(), 0.0);
    bool ok = std::abs(total - net) <= 1e-12 * std::abs(net) * d.size();
    for (double r : out.residuals) ok = ok && r >= 0.0;
    if (all_positive) ok = ok && out.residuals == d;
    const double paid = std::accumulate(out.received_b.begin(), out.received_b.end(), 0.0);
    ok = ok && std::abs(paid - out.pool_output) <= 1e-12 * out.pool_output * d.size();
    ok = ok && std::abs(out.pool_output - pool.forward(out.pool_input)) <= 1e-12 * out.pool_output;
    std::vector<std::size_t> perm(d.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> pd(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) pd[i] = d[perm[i]];
    const BatchOutcome pout = clear({pd, pool});
    for (std::size_t i = 0; i < d.size(); ++i) {
      ok = ok && pout.residuals[i] == out.residuals[perm[i]] &&
           pout.received_b[i] == out.received_b[perm[i]];
    }
    if (!ok) ++bad;
  }
  return {bad == 0, fmt("%g of %g random batches violated an invariant", bad, checked)};
}

Verdict optimal_arbitrage_check() {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int interior = 0, corner = 0, bad_corner = 0;
  for (int k = 0; k < 1000; ++k) {
    const CfmmPool pool{0.9 + 0.1 * unit(gen), 10.0 + 990.0 * unit(gen), 10.0 + 990.0 * unit(gen)};
    const double c = 3.0 * unit(gen) * pool.r2 / pool.r1;
    const double t = optimal_arbitrage(pool, c).t_star;
    if (pool.forward_derivative(0.0) > c) {
      worst = std::max(worst, std::abs(pool.forward_derivative(t) - c));
      ++interior;
    } else {
      if (t != 0.0) ++bad_corner;
      ++corner;
    }
  }
  const double default_t = optimal_arbitrage({0.99, 200.0, 250.0}, 1.0).t_star;
  return {worst <= 1e-8 && bad_corner == 0 && std::abs(default_t - 22.711) < 1e-2,
          fmt("max |g'(t*)-c| %.3g over %g interior cases; ", worst, interior) +
              fmt("%g of %g corner cases nonzero; t*=%.9g at the default pool", bad_corner,
                  corner, default_t)};
}

PayoffFamily clipped(double cap, double end) {
  return PayoffFamily::tabulated({0.0, cap, end}, {0.0, cap, cap});
}

Verdict verify_suite() {
  bool ok = true;
  std::string detail;
  const bool chord_power = check_chord_condition(power()).holds;
  const bool chord_cfmm = check_chord_condition(cfmm()).holds;
  const ConditionReport clip = check_chord_condition(clipped(3.0, 6.0));
  const bool clip_fails = !clip.holds && !clip.witnesses.empty() &&
                          replay_witness(clipped(3.0, 6.0), clip, clip.witnesses[0], 1e-12);
  ok = chord_power && chord_cfmm && clip_fails;
  detail += fmt("chord power=%g cfmm=%g min(t,3) fails with witness=%g; ", chord_power, chord_cfmm,
                clip_fails);

  const std::vector<PayoffFamily> families{power(),
                                           cfmm(),
                                           clipped(3.0, 6.0),
                                           clipped(1.0, 10.0),
                                           PayoffFamily::tabulated({0.0, 2.0, 5.0}, {0.0, 3.0, 3.5}),
                                           PayoffFamily::power({0.3, 0.5})};
  int disagree = 0;
  for (const PayoffFamily& f : families) {
    if (check_chord_condition(f).holds == detect_linear_segment_at_zero(f).holds) ++disagree;
  }
  ok = ok && disagree == 0;
  detail += fmt("detectors disagree on %g of %g families; rosen E:", disagree,
                static_cast<double>(families.size()));

  for (int n : {2, 4, 8}) {
    const double e_min = rosen_probe(clipped(3.0 * n, 6.0 * n), n).value;
    const double m = 4.0 * n;
    const PayoffFamily sq = PayoffFamily::custom(
        "shifted-square", [m](double t) { return m * m - (m - t) * (m - t); },
        [m](double t) { return 2.0 * (m - t); });
    const double e_sq = rosen_probe(sq, n).value;
    ok = ok && std::abs(e_min) <= 1e-9 && e_sq < 0.0;
    detail += fmt(" n=%g min=%.3g square=%.4g", n, e_min, e_sq);
  }
  return {ok, detail};
}

std::string study_csv(unsigned threads) {
  std::vector<int> ns{2, 5, 9};
  StudyOptions opts;
  opts.threads = threads;
  const StudyResult r = convergence_study(cfmm(), ns, 20, 7, opts);
  Table t({"n", "trial", "iterations", "converged"});
  for (const StudyRow& row : r.rows) {
    t.add_row({format_number(row.n), format_number(row.trial), format_number(row.iterations),
               format_bool(row.converged)});
  }
  std::ostringstream out;
  t.write_csv(out);
  return out.str();
}

std::string whale_csv(unsigned threads) {
  WhaleFishOptions opts;
  opts.threads = threads;
  std::vector<WhaleFishTrial> trials;
  whale_fish_experiment(power(), 5, 20, 11, opts, &trials);
  Table t({"trial", "whale_strategy", "whale_profit"});
  for (std::size_t k = 0; k < trials.size(); ++k) {
    t.add_row({format_number(static_cast<long long>(k)), format_number(trials[k].whale_strategy),
               format_number(trials[k].whale_profit)});
  }
  std::ostringstream out;
  t.write_csv(out);
  return out.str();
}

Verdict determinism() {
  int mismatches = 0;
  int runs = 0;
  const auto same = [&](const std::string& a, const std::string& b) {
    ++runs;
    if (a != b || a.empty()) ++mismatches;
  };
  same(study_csv(0), study_csv(0));
  same(study_csv(1), study_csv(4));
  same(whale_csv(0), whale_csv(0));
  same(whale_csv(1), whale_csv(3));
#ifdef PRORATA_ACCEPTANCE_CLI
  const std::vector<std::vector<std::string>> commands{
      {"reproduce", "scenario1", "--trials", "10", "--n-max", "6", "--seed", "3"},
      {"reproduce", "scenario2-delta", "--family", "power", "--trials", "10"},
      {"reproduce", "whale", "--family", "cfmm", "--max-fish", "4", "--trials", "10"},
      {"reproduce", "poa-curve", "--family", "power"},
      {"simulate", "--family", "power", "--n", "5", "--trials", "3", "--seed", "8"},
      {"verify", "--family", "cfmm", "--starts", "5"},
  };
  for (const auto& args : commands) {
    std::ostringstream a, b, err;
    if (prorata::cli::run(args, a, err) != 0 || prorata::cli::run(args, b, err) != 0) {
      ++mismatches;
      ++runs;
      continue;
    }
    same(a.str(), b.str());
  }
#endif
  return {mismatches == 0, fmt("%g of %g repeated runs differed", mismatches, runs)};
}

}  // namespace

int main() {
  report(1, "closed-form equilibrium, power", closed_form_power);
  report(2, "closed-form equilibrium, cfmm", closed_form_cfmm);
  report(3, "first-order residual", foc_residuals);
  report(4, "no profitable deviation", no_profitable_deviation);
  report(5, "price of anarchy closed form, power", poa_power);
  report(6, "price of anarchy grows linearly", omega_n);
  report(7, "scenario 1 convergence trend", scenario1);
  report(8, "scenario 2 iterations fall with delta", scenario2);
  report(9, "whale and fish", whale_fish);
  report(10, "batch clearing invariants", batch_invariants);
  report(11, "optimal arbitrage", optimal_arbitrage_check);
  report(12, "side-condition checks", verify_suite);
  report(13, "determinism", determinism);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
