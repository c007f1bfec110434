#pragma once

// Sampling checks for the side conditions the equilibrium results rely on.
//
// Chord condition: f(a t) > a f(t) for a in (0, 1), t > 0, i.e. every chord
// from the origin lies strictly below f. For concave f with f(0) = 0 it fails
// exactly when f starts with a linear segment at 0, which shows up as two
// points t < t' with f(t)/t = f(t')/t'. The two detectors below test the same
// property from both sides.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prorata/payoff.hpp"

namespace prorata {

enum class Condition { ChordStrict, LinearSegmentAtZero, RosenMonotoneProbe, MultiStartUniqueness };

const char* to_string(Condition condition) noexcept;

/// A sampled point and the two sides of the inequality evaluated there.
///   ChordStrict:          a = alpha, b = t,  lhs = f(alpha t), rhs = alpha f(t)
///   LinearSegmentAtZero:  a = t,     b = t', lhs = f(t)/t,     rhs = f(t')/t'
///   RosenMonotoneProbe:   a = x,     b = y,  lhs = E,          rhs = 0
///   MultiStartUniqueness: a = start, b = converged_at (-1 if not),
///                         lhs = max_i |x_i - q/n|, rhs = threshold
struct Witness {
  double a = 0.0;
  double b = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ConditionReport {
  Condition condition = Condition::ChordStrict;
  // ChordStrict: the strict inequality held at every sample.
  // LinearSegmentAtZero: a collinear pair with the origin was found.
  // RosenMonotoneProbe: E > 0 at the probe pair.
  // MultiStartUniqueness: every start converged to q/n.
  bool holds = false;
  std::vector<Witness> witnesses;
  int samples = 0;
  double domain = 0.0;
  double value = 0.0;                   // RosenMonotoneProbe: E
  bool finite_difference_used = false;  // RosenMonotoneProbe
  bool cross_validated = false;         // LinearSegmentAtZero: f(s) = (f(t)/t) s on (0, t)
  std::string note;
};

struct ChordOptions {
  int samples = 10000;
  std::uint64_t seed = 1;
  // Upper end of the sampled t range. Defaults to w, or to the end of the
  // domain when f has no finite root there.
  std::optional<double> domain;
  double tol_strict = 1e-12;  // relative to |f(t)|
  int max_witnesses = 8;
};

ConditionReport check_chord_condition(const PayoffFamily& family, const ChordOptions& options = {});

struct LinearSegmentOptions {
  int grid_points = 256;
  std::optional<double> domain;
  double tol_equal = 1e-10;  // relative to |f(t')/t'|
};

/// Searches a uniform grid on (0, domain) for a pair with equal f(t)/t.
ConditionReport detect_linear_segment_at_zero(const PayoffFamily& family,
                                              const LinearSegmentOptions& options = {});

/// Same search over caller-supplied abscissae (sorted internally).
ConditionReport detect_linear_segment_at_zero(const PayoffFamily& family, std::vector<double> ts,
                                              double tol_equal = 1e-10);

/// E = (1/n)(f'(n) - f'(n/2)) + (1 - 1/n)(f(n) - 2 f(n/2)), the monotonicity
/// margin of the weighted pseudo-gradient at x = 1/2, y = 1 (all players).
/// holds is false when E <= 0, i.e. Rosen's sufficient condition fails there.
ConditionReport rosen_probe(const PayoffFamily& family, int n);

struct UniquenessOptions {
  int starts = 20;
  std::uint64_t seed = 1;
  double convergence_threshold = 0.1;
  int max_iterations = 10000;
};

/// Runs best-response dynamics from `starts` random profiles and checks that
/// every run ends within the threshold of the same symmetric equilibrium.
ConditionReport check_multistart_uniqueness(const PayoffFamily& family, int n,
                                            const UniquenessOptions& options = {});

/// Evaluates a stored witness again and reports whether it still supports the
/// recorded verdict.
bool replay_witness(const PayoffFamily& family, const ConditionReport& report,
                    const Witness& witness, double tolerance);

}  // namespace prorata
