#pragma once

// One-dimensional solvers shared by the payoff, equilibrium and batch modules.

#include <functional>

namespace prorata {

struct GoldenOptions {
  int max_iterations = 200;
  // Bracket floor. The search also stops once the bracket is a few ulps wide.
  double abs_tol = 1e-12;
};

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// The objective may return -inf on part of the interval.
GoldenResult golden_section_maximize(const std::function<double(double)>& objective,
                                     double lo, double hi, const GoldenOptions& options = {});

struct BisectOptions {
  int max_iterations = 400;
  // Stop once hi - lo <= rel_tol * max(|lo|, |hi|) + abs_tol. Zero for both
  // means run to full double precision.
  double rel_tol = 0.0;
  double abs_tol = 0.0;
};

/// Bisection for a sign change of `fn` on [lo, hi]. Requires fn(lo) and fn(hi)
/// to have opposite signs (zero counts as either). Returns the midpoint of the
/// final bracket, or an endpoint if fn vanishes there.
double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   const BisectOptions& options = {});

/// Maximizes a strictly unimodal objective on [lo, hi]: golden-section search
/// followed, when `slope` is given, by bisection on the sign of the slope in a
/// narrow window around the golden estimate. The slope only needs the sign of
/// the derivative, so callers can pass any positive multiple of it.
///
/// Golden-section alone resolves a flat maximum to about sqrt(eps) relative;
/// the slope polish brings that down to a few ulps.
GoldenResult maximize_unimodal(const std::function<double(double)>& objective,
                               const std::function<double(double)>& slope, double lo,
                               double hi, const GoldenOptions& options = {});

}  // namespace prorata
