#include "prorata/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prorata/error.hpp"

namespace prorata {
namespace {

PayoffDiagnostics diagnostics_or_throw(const PayoffFamily& family, const PayoffTolerances& tol) {
  try {
    return find_root_w(family, tol);
  } catch (const NoPositiveRegion& e) {
    throw NoEquilibrium(std::string("only the trivial equilibrium exists: ") + e.what());
  } catch (const NoFiniteRoot& e) {
    throw NoEquilibrium(std::string("no equilibrium exists: ") + e.what());
  }
}

void require_players(int n) {
  if (n < 1) throw DomainError("player count must be at least 1, got " + std::to_string(n));
}

}  // namespace

const char* to_string(EquilibriumMethod method) noexcept {
  switch (method) {
    case EquilibriumMethod::ClosedFormQuadratic:
      return "closed-form-quadratic";
    case EquilibriumMethod::ClosedFormPower:
      return "closed-form-power";
    case EquilibriumMethod::GoldenSection:
      return "golden-section";
  }
  return "unknown";
}

const char* to_string(BoundaryFlag flag) noexcept {
  switch (flag) {
    case BoundaryFlag::Zero:
      return "zero";
    case BoundaryFlag::Budget:
      return "budget";
    case BoundaryFlag::Interior:
      return "interior";
  }
  return "unknown";
}

double cfmm_equilibrium_quadratic_root(const CfmmParams& p, int n) {
  require_players(n);
  const double nn = static_cast<double>(n);
  const double g2 = p.gamma * p.gamma;
  const double a = p.c * nn * g2;
  const double b = g2 * p.r2 + 2.0 * p.c * nn * p.r1 * p.gamma - g2 * nn * p.r2;
  const double c = p.c * nn * p.r1 * p.r1 - p.gamma * nn * p.r1 * p.r2;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw NoEquilibrium("cfmm quadratic has no real root");
  const double sq = std::sqrt(disc);
  // Larger root; the second form avoids cancellation when b > 0.
  const double root = b > 0.0 ? -2.0 * c / (b + sq) : (-b + sq) / (2.0 * a);
  if (!(root > 0.0)) throw NoEquilibrium("cfmm quadratic has no positive root");
  return root;
}

double power_equilibrium_closed_form(const PowerParams& p, int n) {
  require_players(n);
  const double nn = static_cast<double>(n);
  return std::pow((p.beta + nn - 1.0) / (nn * p.gamma), 1.0 / (1.0 - p.beta));
}

double foc_residual(const PayoffFamily& family, int n, double q, const PayoffTolerances& tol) {
  if (!(q > 0.0)) throw DomainError("foc_residual: q must be positive");
  return std::abs((n - 1) * family.eval(q) + q * family.derivative(q, tol));
}

EquilibriumResult solve_symmetric(const PayoffFamily& family, int n,
                                  const EquilibriumOptions& options) {
  require_players(n);
  EquilibriumResult out;
  out.n = n;
  out.diagnostics = diagnostics_or_throw(family, options.tolerances);
  const PayoffDiagnostics& diag = out.diagnostics;

  const bool closed = options.path == SolvePath::Auto;
  if (closed && family.power_params() != nullptr) {
    out.q = power_equilibrium_closed_form(*family.power_params(), n);
    out.method = EquilibriumMethod::ClosedFormPower;
  } else if (closed && family.cfmm_params() != nullptr) {
    out.q = cfmm_equilibrium_quadratic_root(*family.cfmm_params(), n);
    out.method = EquilibriumMethod::ClosedFormQuadratic;
  } else {
    const double lead = static_cast<double>(n - 1);
    const auto objective = [&](double q) {
      const double fq = family.eval(q);
      if (!(fq > 0.0)) return -std::numeric_limits<double>::infinity();
      return lead * std::log(q) + std::log(fq);
    };
    // Sign of F'(q) = ((n-1) f(q) + q f'(q)) / (q f(q)) on the positive region.
    const auto slope = [&](double q) {
      return lead * family.eval(q) + q * family.derivative(q, options.tolerances);
    };
    // q >= q* and f(q*/2) >= f(q*)/2 > 0, so [q*/2, w] brackets the optimum.
    const GoldenResult best =
        maximize_unimodal(objective, slope, 0.5 * diag.argmax, diag.w, options.golden);
    if (!std::isfinite(best.value)) {
      throw NumericFailure("solve_symmetric: log objective not finite at optimum");
    }
    out.q = best.x;
    out.iterations = best.iterations;
    out.method = EquilibriumMethod::GoldenSection;
  }

  out.per_player = out.q / n;
  out.equilibrium_payoff = family.eval(out.q) / n;
  out.foc_residual = foc_residual(family, n, out.q, options.tolerances);
  return out;
}

// ---------------------------------------------------------------------------

double cfmm_best_response_closed_form(const CfmmParams& p, double y) {
  const double inner = (p.gamma * p.r1 * p.r2 + p.gamma * p.gamma * p.r2 * y) / p.c;
  const double x = (std::sqrt(inner) - p.r1) / p.gamma - y;
  return std::max(0.0, x);
}

BestResponseSolver::BestResponseSolver(PayoffFamily family, const EquilibriumOptions& options)
    : family_(std::move(family)), options_(options) {
  diagnostics_ = diagnostics_or_throw(family_, options_.tolerances);
}

double BestResponseSolver::unconstrained(double y) const {
  if (!(y >= 0.0)) throw DomainError("best_response: others' total must be nonnegative");
  if (options_.path == SolvePath::Auto && family_.cfmm_params() != nullptr) {
    return cfmm_best_response_closed_form(*family_.cfmm_params(), y);
  }
  // Any x with x + y >= w earns a nonpositive payoff.
  const double upper = diagnostics_.w - y;
  if (!(upper > 0.0)) return 0.0;
  const auto objective = [&](double x) { return pro_rata_payoff(family_, x, y); };
  // (x + y) * dU/dx = y f(s) / s + x f'(s), s = x + y.
  const auto slope = [&](double x) {
    const double s = x + y;
    if (s == 0.0) return family_.derivative(0.0, options_.tolerances);
    return y * family_.eval(s) / s + x * family_.derivative(s, options_.tolerances);
  };
  const GoldenResult best = maximize_unimodal(objective, slope, 0.0, upper, options_.golden);
  return best.value > 0.0 ? best.x : 0.0;
}

BestResponseResult BestResponseSolver::operator()(double y, double budget) const {
  if (!(budget >= 0.0)) throw DomainError("best_response: budget must be nonnegative");
  BestResponseResult out;
  const double x = std::min(unconstrained(y), budget);
  out.x = x;
  out.payoff = pro_rata_payoff(family_, x, y);
  if (x == 0.0) {
    out.at_boundary = BoundaryFlag::Zero;
  } else if (x == budget) {
    out.at_boundary = BoundaryFlag::Budget;
  } else {
    out.at_boundary = BoundaryFlag::Interior;
  }
  return out;
}

BestResponseResult best_response(const PayoffFamily& family, double y, double budget,
                                 const EquilibriumOptions& options) {
  return BestResponseSolver(family, options)(y, budget);
}

}  // namespace prorata
