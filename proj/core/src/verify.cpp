#include "prorata/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prorata/dynamics.hpp"
#include "prorata/error.hpp"
#include "prorata/random.hpp"

namespace prorata {
namespace {

double sampling_domain(const PayoffFamily& family, const std::optional<double>& requested) {
  if (requested) {
    if (!(*requested > 0.0)) throw DomainError("verify: domain bound must be positive");
    return std::min(*requested, family.domain_end());
  }
  try {
    return find_root_w(family).w;
  } catch (const NoFiniteRoot&) {
  } catch (const NoPositiveRegion&) {
  }
  if (std::isfinite(family.domain_end())) return family.domain_end();
  throw DomainError("verify: f has no finite root; pass an explicit domain bound");
}

// Fractional part in [0, 1).
double frac(double v) { return v - std::floor(v); }

}  // namespace

const char* to_string(Condition condition) noexcept {
  switch (condition) {
    case Condition::ChordStrict:
      return "chord";
    case Condition::LinearSegmentAtZero:
      return "linear-segment";
    case Condition::RosenMonotoneProbe:
      return "rosen";
    case Condition::MultiStartUniqueness:
      return "uniqueness";
  }
  return "unknown";
}

ConditionReport check_chord_condition(const PayoffFamily& family, const ChordOptions& options) {
  if (options.samples < 1) throw DomainError("chord: samples must be positive");
  ConditionReport report;
  report.condition = Condition::ChordStrict;
  report.domain = sampling_domain(family, options.domain);
  report.samples = options.samples;
  report.holds = true;

  // Additive-recurrence (R2) low-discrepancy points with a seeded offset.
  constexpr double kPlastic = 1.32471795724474602596;
  const double step_a = 1.0 / kPlastic;
  const double step_t = 1.0 / (kPlastic * kPlastic);
  Rng rng(options.seed);
  const double offset_a = rng.open_unit();
  const double offset_t = rng.open_unit();

  Witness tightest;
  double tightest_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < options.samples; ++k) {
    const double alpha = frac(offset_a + (k + 1) * step_a);
    const double t = frac(offset_t + (k + 1) * step_t) * report.domain;
    if (alpha <= 0.0 || t <= 0.0) continue;
    const double ft = family.eval(t);
    const double lhs = family.eval(alpha * t);
    const double rhs = alpha * ft;
    const double margin = lhs - rhs - options.tol_strict * std::abs(ft);
    if (!(margin > 0.0)) {
      report.holds = false;
      if (static_cast<int>(report.witnesses.size()) < options.max_witnesses) {
        report.witnesses.push_back({alpha, t, lhs, rhs});
      }
    } else if (margin < tightest_margin) {
      tightest_margin = margin;
      tightest = {alpha, t, lhs, rhs};
    }
  }
  if (report.holds) report.witnesses.push_back(tightest);
  return report;
}

ConditionReport detect_linear_segment_at_zero(const PayoffFamily& family, std::vector<double> ts,
                                              double tol_equal) {
  ConditionReport report;
  report.condition = Condition::LinearSegmentAtZero;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (double t : ts) {
    if (!(t > 0.0)) throw DomainError("linear-segment: abscissae must be positive");
  }
  report.samples = static_cast<int>(ts.size());
  report.domain = ts.empty() ? 0.0 : ts.back();

  std::vector<double> ratio(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) ratio[k] = family.eval(ts[k]) / ts[k];

  for (std::size_t i = 0; i < ts.size() && !report.holds; ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      if (std::abs(ratio[i] - ratio[j]) <= tol_equal * std::abs(ratio[j])) {
        report.holds = true;
        report.witnesses.push_back({ts[i], ts[j], ratio[i], ratio[j]});
        break;
      }
    }
  }
  if (report.holds) {
    // A collinear pair forces f(s) = (f(t)/t) s on all of [0, t].
    const Witness& w = report.witnesses.front();
    report.cross_validated = true;
    for (double frac_s : {0.125, 0.25, 0.5, 0.75, 0.875}) {
      const double s = frac_s * w.a;
      const double expected = w.lhs * s;
      const double scale = std::max(std::abs(expected), std::numeric_limits<double>::min());
      if (std::abs(family.eval(s) - expected) > tol_equal * scale) {
        report.cross_validated = false;
        report.note = "collinear pair found but f is not linear on (0, t)";
      }
    }
  }
  return report;
}

ConditionReport detect_linear_segment_at_zero(const PayoffFamily& family,
                                              const LinearSegmentOptions& options) {
  if (options.grid_points < 2) throw DomainError("linear-segment: need at least two grid points");
  const double domain = sampling_domain(family, options.domain);
  std::vector<double> ts(static_cast<std::size_t>(options.grid_points));
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ts[k] = domain * static_cast<double>(k + 1) / static_cast<double>(ts.size() + 1);
  }
  ConditionReport report = detect_linear_segment_at_zero(family, std::move(ts), options.tol_equal);
  report.domain = domain;
  return report;
}

ConditionReport rosen_probe(const PayoffFamily& family, int n) {
  if (n < 2) throw DomainError("rosen: n must be at least 2");
  const double nn = static_cast<double>(n);
  if (family.domain_end() < nn) throw DomainError("rosen: f must be defined on [0, n]");
  ConditionReport report;
  report.condition = Condition::RosenMonotoneProbe;
  report.samples = 1;
  report.domain = nn;
  report.finite_difference_used = !family.has_analytic_derivative();
  if (report.finite_difference_used) report.note = "derivative from central differences";
  const double half = 0.5 * nn;
  report.value = (family.derivative(nn) - family.derivative(half)) / nn +
                 (1.0 - 1.0 / nn) * (family.eval(nn) - 2.0 * family.eval(half));
  report.holds = report.value > 0.0;
  report.witnesses.push_back({0.5, 1.0, report.value, 0.0});
  return report;
}

ConditionReport check_multistart_uniqueness(const PayoffFamily& family, int n,
                                            const UniquenessOptions& options) {
  ConditionReport report;
  report.condition = Condition::MultiStartUniqueness;
  report.samples = options.starts;
  report.holds = true;
  for (int s = 0; s < options.starts; ++s) {
    GameConfig config(family, n);
    config.convergence_threshold = options.convergence_threshold;
    config.max_iterations = options.max_iterations;
    config.seed = trial_seed(options.seed, static_cast<std::uint64_t>(s));
    config.record_profiles = false;
    const DynamicsTrace trace = simulate(config, init_uniform(config));
    double distance = 0.0;
    for (double x : trace.final_profile.x) distance = std::max(distance, std::abs(x - *trace.target));
    report.domain = *trace.target * n;
    report.witnesses.push_back({static_cast<double>(s),
                                static_cast<double>(trace.converged_at.value_or(-1)), distance,
                                options.convergence_threshold});
    if (!trace.converged_at || !(distance < options.convergence_threshold)) report.holds = false;
  }
  return report;
}

bool replay_witness(const PayoffFamily& family, const ConditionReport& report,
                    const Witness& w, double tolerance) {
  switch (report.condition) {
    case Condition::ChordStrict: {
      const double ft = family.eval(w.b);
      const bool strict = family.eval(w.a * w.b) - w.a * ft > tolerance * std::abs(ft);
      return strict == report.holds;
    }
    case Condition::LinearSegmentAtZero: {
      const double r1 = family.eval(w.a) / w.a;
      const double r2 = family.eval(w.b) / w.b;
      return (std::abs(r1 - r2) <= tolerance * std::abs(r2)) == report.holds;
    }
    case Condition::RosenMonotoneProbe:
      return (rosen_probe(family, static_cast<int>(report.domain)).value > 0.0) == report.holds;
    case Condition::MultiStartUniqueness:
      return (w.lhs < w.rhs) || !report.holds;
  }
  return false;
}

}  // namespace prorata
