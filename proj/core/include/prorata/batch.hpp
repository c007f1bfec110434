#pragma once

// Batched exchange clearing: signed trade intents are netted into
// nonnegative residual demand, the pooled residual is swapped through a
// constant-product pool, and the output is split pro rata.
//
// Netting scales the positive orders down proportionally so that they sum to
// the net demand. Traders with negative intents are fully matched against the
// positive side; they get residual 0 and no share of the pool output (what
// they receive on the other side of the match is outside this model). Only
// batches with positive net demand for the received asset are cleared.

#include <vector>

#include "prorata/payoff.hpp"

namespace prorata {

struct BatchInstance {
  std::vector<double> deltas;  // > 0 tenders the first asset for the second
  CfmmPool cfmm;
};

struct BatchOutcome {
  std::vector<double> residuals;   // >= 0, sums to sum(deltas)
  double pool_input = 0.0;         // sum(residuals)
  double pool_output = 0.0;        // g(pool_input)
  std::vector<double> received_b;  // pro-rata shares of pool_output
};

/// Throws NonPositiveNetDemand when sum(deltas) <= 0, DomainError on
/// non-finite entries or invalid pool parameters.
BatchOutcome clear(const BatchInstance& instance);

/// x g(x + y) / (x + y) - c x: what an arbitrageur tendering x into a batch
/// with y from others gets back, valued at the external price c, minus cost.
double arbitrage_payoff(const CfmmPool& pool, double c, double x, double y);

struct ArbitrageSolution {
  double t_star = 0.0;
  bool bracket_capped = false;  // g'(t) > c past the expansion cap
};

struct ArbitrageOptions {
  double expansion_cap = 1e12;  // relative to max(1, r1 / gamma)
};

/// argmax over t >= 0 of g(t) - c t: zero when g'(0) <= c, otherwise the
/// root of g'(t) = c found by bracket expansion and bisection.
ArbitrageSolution optimal_arbitrage(const CfmmPool& pool, double c,
                                    const ArbitrageOptions& options = {});

}  // namespace prorata
