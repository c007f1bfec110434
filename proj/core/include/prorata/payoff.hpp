#pragma once

// Concave payoff functions f with f(0) = 0 and the services built on them:
// evaluation, derivative, the positive root w and the pro-rata split.

#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace prorata {

enum class PayoffKind { CfmmArbitrage, Power, Tabulated, Custom };

const char* to_string(PayoffKind kind) noexcept;

/// Forward exchange function of a constant-product pool with a fee:
/// g(t) = gamma * r2 * t / (r1 + gamma * t), the amount of the received asset
/// paid out for t units of the tendered asset.
struct CfmmPool {
  double gamma = 1.0;  // fee scalar in (0, 1]
  double r1 = 1.0;     // reserve of the tendered asset
  double r2 = 1.0;     // reserve of the received asset

  void validate() const;
  double forward(double t) const noexcept { return gamma * r2 * t / (r1 + gamma * t); }
  double forward_derivative(double t) const noexcept {
    const double denom = r1 + gamma * t;
    return gamma * r1 * r2 / (denom * denom);
  }
};

/// Arbitrage payoff against an external market: f(t) = g(t) - c t.
struct CfmmParams {
  double gamma = 1.0;
  double r1 = 1.0;
  double r2 = 1.0;
  double c = 1.0;  // external market price

  CfmmPool pool() const noexcept { return {gamma, r1, r2}; }
};

/// f(t) = t^beta - gamma t.
struct PowerParams {
  double beta = 0.5;   // in (0, 1)
  double gamma = 1.0;  // > 0
};

/// Piecewise-linear interpolant through (xs[k], ys[k]); xs strictly increasing
/// and the first point is the origin.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

  double value(double t) const;
  // Slope of the segment containing t (right segment at a breakpoint).
  double segment_slope(double t) const;
  // Index of the segment containing t.
  std::size_t segment(double t) const;
  double domain_end() const noexcept { return xs_.back(); }
  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

struct PayoffTolerances {
  double bracket_rel = 1e-10;     // relative width of the final root bracket
  double fd_step_rel = 1e-6;      // h = fd_step_rel * max(1, t)
  double expansion_cap = 1e12;    // doubling stops past expansion_cap * max(1, z)
};

/// A concave payoff f: R+ -> R with f(0) = 0. Immutable value type.
class PayoffFamily {
 public:
  using Function = std::function<double(double)>;

  static PayoffFamily cfmm(const CfmmParams& params);
  static PayoffFamily power(const PowerParams& params);
  static PayoffFamily tabulated(std::vector<double> xs, std::vector<double> ys);
  /// Arbitrary callable. Without `derivative`, derivatives fall back to central
  /// differences. The caller is responsible for concavity and f(0) = 0; the
  /// verify module can check both.
  static PayoffFamily custom(std::string name, Function f, Function derivative = {},
                             double domain_end = std::numeric_limits<double>::infinity());

  PayoffKind kind() const noexcept;

  /// f(t) for t >= 0; exactly 0 at t = 0. Negative values are returned as-is.
  double eval(double t) const;
  double operator()(double t) const { return eval(t); }

  /// f'(t). Analytic for CfmmArbitrage and Power (and Custom when supplied);
  /// central difference with h = fd_step_rel * max(1, t) otherwise.
  double derivative(double t, const PayoffTolerances& tol = {}) const;
  bool has_analytic_derivative() const noexcept;

  /// Right end of the domain: the last abscissa of a table, +inf otherwise.
  double domain_end() const noexcept;

  const CfmmParams* cfmm_params() const noexcept;
  const PowerParams* power_params() const noexcept;
  const PiecewiseLinear* table() const noexcept;

  /// Short human-readable description, e.g. "power(beta=0.5, gamma=0.05)".
  std::string describe() const;

 private:
  struct Custom {
    std::string name;
    Function f;
    Function df;
    double domain_end;
  };
  using Repr = std::variant<CfmmParams, PowerParams, PiecewiseLinear, Custom>;

  explicit PayoffFamily(Repr repr) : repr_(std::move(repr)) {}

  double finite_difference(double t, const PayoffTolerances& tol) const;

  Repr repr_;
};

/// U_i = x_i f(x_i + y_i) / (x_i + y_i), the payoff of a player contributing
/// x_i when everyone else contributes y_i in total. Zero when x_i = 0.
double pro_rata_payoff(const PayoffFamily& family, double x_i, double y_i);

/// Derived quantities of f on its positive region (0, w).
struct PayoffDiagnostics {
  double w = 0.0;                     // f(w) = 0, w > 0
  double sup_f = 0.0;                 // max of f over [0, w]
  double argmax = 0.0;                // q*, the maximizer of f
  double positivity_witness = 0.0;    // some z in (0, w) with f(z) > 0
};

/// Locates the positive root w of f by bracket expansion from a positive
/// sample followed by bisection from the argmax, and the argmax q* by
/// golden-section search.
///
/// Throws NoPositiveRegion when f <= 0 at every probe near the origin and
/// NoFiniteRoot when f stays positive past the expansion cap (or through the
/// end of a table's domain).
PayoffDiagnostics find_root_w(const PayoffFamily& family, const PayoffTolerances& tol = {});

}  // namespace prorata
