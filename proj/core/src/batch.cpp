#include "prorata/batch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prorata/error.hpp"
#include "prorata/numeric.hpp"

namespace prorata {
namespace {

// Sum that does not depend on the order of the inputs.
double ordered_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace

BatchOutcome clear(const BatchInstance& instance) {
  instance.cfmm.validate();
  const std::vector<double>& deltas = instance.deltas;
  for (double d : deltas) {
    if (!std::isfinite(d)) throw DomainError("batch: non-finite trade amount");
  }
  const double net = ordered_sum(deltas);
  if (!(net > 0.0)) {
    throw NonPositiveNetDemand("batch: net demand " + std::to_string(net) + " is not positive");
  }

  BatchOutcome out;
  const bool all_nonnegative =
      std::all_of(deltas.begin(), deltas.end(), [](double d) { return d >= 0.0; });
  if (all_nonnegative) {
    out.residuals = deltas;
  } else {
    std::vector<double> positive(deltas.size());
    std::transform(deltas.begin(), deltas.end(), positive.begin(),
                   [](double d) { return std::max(d, 0.0); });
    const double scale = net / ordered_sum(positive);
    out.residuals.resize(deltas.size());
    std::transform(positive.begin(), positive.end(), out.residuals.begin(),
                   [scale](double p) { return p * scale; });
  }

  out.pool_input = ordered_sum(out.residuals);
  out.pool_output = instance.cfmm.forward(out.pool_input);
  out.received_b.resize(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    out.received_b[i] = out.residuals[i] / out.pool_input * out.pool_output;
  }
  return out;
}

double arbitrage_payoff(const CfmmPool& pool, double c, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("arbitrage_payoff: negative contribution");
  if (!(c > 0.0)) throw DomainError("arbitrage_payoff: price must be positive");
  if (x == 0.0) return 0.0;
  const double total = x + y;
  return x / total * pool.forward(total) - c * x;
}

ArbitrageSolution optimal_arbitrage(const CfmmPool& pool, double c,
                                    const ArbitrageOptions& options) {
  pool.validate();
  if (!(c > 0.0)) throw DomainError("optimal_arbitrage: price must be positive");
  ArbitrageSolution out;
  const auto excess = [&](double t) { return pool.forward_derivative(t) - c; };
  if (excess(0.0) <= 0.0) return out;

  const double scale = std::max(1.0, pool.r1 / pool.gamma);
  const double cap = options.expansion_cap * scale;
  double hi = scale;
  while (excess(hi) > 0.0) {
    if (hi > cap) {
      out.t_star = cap;
      out.bracket_capped = true;
      return out;
    }
    hi *= 2.0;
  }
  out.t_star = bisect_root(excess, 0.0, hi);
  return out;
}

}  // namespace prorata
