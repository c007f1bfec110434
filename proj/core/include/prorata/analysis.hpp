#pragma once

// Price of anarchy relative to the best fair allocation: every player gets
// (sup f)/n under the fair optimum and f(q)/n at the symmetric equilibrium.

#include <optional>
#include <vector>

#include "prorata/equilibrium.hpp"

namespace prorata {

struct PoaReport {
  int n = 0;
  double q = 0.0;
  double sup_f = 0.0;
  double equilibrium_payoff = 0.0;   // f(q) / n
  double fair_optimal_payoff = 0.0;  // sup f / n
  double poa = 0.0;                  // sup f / f(q)
  std::optional<double> closed_form_poa;  // Power family only
};

PoaReport poa(const PayoffFamily& family, int n, const EquilibriumOptions& options = {});

/// n (beta n / (n + beta - 1))^(beta / (1 - beta)).
double power_poa_closed_form(const PowerParams& params, int n);

struct PoaGrowthReport {
  std::vector<PoaReport> rows;  // n = 1..n_max
  bool nondecreasing = false;
  int n0 = 0;
  double min_ratio = 0.0;   // inf over n >= n0 of poa(n) / n
  int argmin_ratio_n = 0;
  bool linear_growth = false;  // nondecreasing and min_ratio > 0
};

/// Tabulates the price of anarchy for n = 1..n_max and checks that it grows at
/// least linearly on that range: poa is nondecreasing and poa(n)/n stays
/// bounded away from zero for n >= n0.
PoaGrowthReport poa_growth_check(const PayoffFamily& family, int n_max, int n0 = 10,
                                 const EquilibriumOptions& options = {});

}  // namespace prorata
