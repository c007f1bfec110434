#pragma once

// Symmetric equilibrium of the n-player pro-rata game and single-player best
// responses.
//
// The symmetric equilibrium total q maximizes q^(n-1) f(q) over (0, w); each
// player contributes q/n. The maximizer is found in log space,
// F(q) = (n-1) log q + log f(q), which is strictly concave on the positive
// region of f and never overflows for large n.

#include <limits>

#include "prorata/numeric.hpp"
#include "prorata/payoff.hpp"

namespace prorata {

enum class EquilibriumMethod { ClosedFormQuadratic, ClosedFormPower, GoldenSection };

const char* to_string(EquilibriumMethod method) noexcept;

enum class SolvePath {
  Auto,     // closed form for Power and CfmmArbitrage, numeric otherwise
  Numeric,  // always golden-section on the log objective
};

struct EquilibriumOptions {
  SolvePath path = SolvePath::Auto;
  GoldenOptions golden;
  PayoffTolerances tolerances;
};

struct EquilibriumResult {
  int n = 0;
  double q = 0.0;                   // total contribution
  double per_player = 0.0;          // q / n
  double equilibrium_payoff = 0.0;  // f(q) / n
  double foc_residual = 0.0;        // |(n-1) f(q) + q f'(q)|
  EquilibriumMethod method = EquilibriumMethod::GoldenSection;
  int iterations = 0;               // golden-section iterations, 0 for closed forms
  PayoffDiagnostics diagnostics;
};

/// Unique symmetric equilibrium of the n-player game. Throws NoEquilibrium
/// when f has no positive region or no finite root.
EquilibriumResult solve_symmetric(const PayoffFamily& family, int n,
                                  const EquilibriumOptions& options = {});

/// Larger root of c n g^2 q^2 + (g^2 R2 + 2 c n R1 g - g^2 n R2) q
/// + (c n R1^2 - g n R1 R2) = 0, the first-order condition of the CFMM
/// arbitrage game. Throws NoEquilibrium if that root is not positive.
double cfmm_equilibrium_quadratic_root(const CfmmParams& params, int n);

/// q = ((beta + n - 1) / (n gamma))^(1 / (1 - beta)).
double power_equilibrium_closed_form(const PowerParams& params, int n);

/// |(n-1) f(q) + q f'(q)|.
double foc_residual(const PayoffFamily& family, int n, double q,
                    const PayoffTolerances& tol = {});

enum class BoundaryFlag { Zero, Budget, Interior };

const char* to_string(BoundaryFlag flag) noexcept;

struct BestResponseResult {
  double x = 0.0;
  double payoff = 0.0;
  BoundaryFlag at_boundary = BoundaryFlag::Zero;
};

/// Best response of one player to the others' total `y`, with x in [0, budget].
///
/// The objective x f(x+y)/(x+y) is strictly concave in x, so the constrained
/// optimum is the unconstrained one clamped to [0, budget]. Reuse one solver
/// across calls; construction runs find_root_w once.
class BestResponseSolver {
 public:
  explicit BestResponseSolver(PayoffFamily family, const EquilibriumOptions& options = {});

  BestResponseResult operator()(double y,
                                double budget = std::numeric_limits<double>::infinity()) const;

  /// Unconstrained maximizer over x >= 0.
  double unconstrained(double y) const;

  const PayoffFamily& family() const noexcept { return family_; }
  const PayoffDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  PayoffFamily family_;
  EquilibriumOptions options_;
  PayoffDiagnostics diagnostics_;
};

BestResponseResult best_response(const PayoffFamily& family, double y,
                                 double budget = std::numeric_limits<double>::infinity(),
                                 const EquilibriumOptions& options = {});

/// Closed-form unconstrained CFMM best response,
/// (1/g)(sqrt((g R1 R2 + g^2 R2 y) / c) - R1) - y, clamped at zero.
double cfmm_best_response_closed_form(const CfmmParams& params, double y);

}  // namespace prorata
