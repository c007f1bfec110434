#include "prorata/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prorata/error.hpp"

namespace prorata {

double power_poa_closed_form(const PowerParams& p, int n) {
  if (n < 1) throw DomainError("poa: n must be at least 1");
  const double nn = static_cast<double>(n);
  return nn * std::pow(p.beta * nn / (nn + p.beta - 1.0), p.beta / (1.0 - p.beta));
}

PoaReport poa(const PayoffFamily& family, int n, const EquilibriumOptions& options) {
  const EquilibriumResult eq = solve_symmetric(family, n, options);
  PoaReport out;
  out.n = n;
  out.q = eq.q;
  const double fq = family.eval(eq.q);
  // sup f >= f(q) holds exactly; taking the max absorbs rounding in the argmax.
  out.sup_f = std::max(eq.diagnostics.sup_f, fq);
  out.equilibrium_payoff = fq / n;
  out.fair_optimal_payoff = out.sup_f / n;
  out.poa = out.sup_f / fq;
  if (const PowerParams* p = family.power_params()) {
    out.closed_form_poa = power_poa_closed_form(*p, n);
  }
  return out;
}

PoaGrowthReport poa_growth_check(const PayoffFamily& family, int n_max, int n0,
                                 const EquilibriumOptions& options) {
  if (n_max < 1) throw DomainError("poa_growth_check: n_max must be at least 1");
  PoaGrowthReport out;
  out.n0 = std::clamp(n0, 1, n_max);
  out.nondecreasing = true;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    out.rows.push_back(poa(family, n, options));
    const PoaReport& row = out.rows.back();
    if (n > 1 && row.poa < out.rows[out.rows.size() - 2].poa) out.nondecreasing = false;
    if (n >= out.n0) {
      const double ratio = row.poa / n;
      if (ratio < out.min_ratio) {
        out.min_ratio = ratio;
        out.argmin_ratio_n = n;
      }
    }
  }
  out.linear_growth = out.nondecreasing && out.min_ratio > 0.0;
  return out;
}

}  // namespace prorata
