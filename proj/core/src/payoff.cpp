#include "prorata/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prorata/error.hpp"
#include "prorata/numeric.hpp"

namespace prorata {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

const char* to_string(PayoffKind kind) noexcept {
  switch (kind) {
    case PayoffKind::CfmmArbitrage:
      return "cfmm";
    case PayoffKind::Power:
      return "power";
    case PayoffKind::Tabulated:
      return "table";
    case PayoffKind::Custom:
      return "custom";
  }
  return "unknown";
}

void CfmmPool::validate() const {
  require(gamma > 0.0 && gamma <= 1.0, "cfmm: gamma must lie in (0, 1]");
  require(r1 > 0.0 && std::isfinite(r1), "cfmm: r1 must be positive");
  require(r2 > 0.0 && std::isfinite(r2), "cfmm: r2 must be positive");
}

// ---------------------------------------------------------------------------
// PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  require(xs_.size() == ys_.size(), "table: abscissae and ordinates differ in length");
  require(xs_.size() >= 2, "table: need at least two points");
  require(xs_.front() == 0.0 && ys_.front() == 0.0, "table: first point must be (0, 0)");
  for (std::size_t k = 0; k < xs_.size(); ++k) {
    require(std::isfinite(xs_[k]) && std::isfinite(ys_[k]), "table: non-finite entry");
    if (k > 0) require(xs_[k] > xs_[k - 1], "table: abscissae must be strictly increasing");
  }
}

std::size_t PiecewiseLinear::segment(double t) const {
  // First breakpoint strictly greater than t closes the segment.
  auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  hi = std::clamp<std::size_t>(hi, 1, xs_.size() - 1);
  return hi - 1;
}

double PiecewiseLinear::segment_slope(double t) const {
  const std::size_t k = segment(t);
  return (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]);
}

double PiecewiseLinear::value(double t) const {
  if (!(t >= 0.0)) throw DomainError("table: negative argument");
  if (t > xs_.back()) {
    std::ostringstream msg;
    msg << "table: t=" << t << " beyond last abscissa " << xs_.back();
    throw DomainError(msg.str());
  }
  const std::size_t k = segment(t);
  if (t == xs_[k]) return ys_[k];
  if (t == xs_[k + 1]) return ys_[k + 1];
  return ys_[k] + (t - xs_[k]) * segment_slope(t);
}

// ---------------------------------------------------------------------------
// PayoffFamily

PayoffFamily PayoffFamily::cfmm(const CfmmParams& params) {
  params.pool().validate();
  require(params.c > 0.0 && std::isfinite(params.c), "cfmm: price c must be positive");
  return PayoffFamily(params);
}

PayoffFamily PayoffFamily::power(const PowerParams& params) {
  require(params.beta > 0.0 && params.beta < 1.0, "power: beta must lie in (0, 1)");
  require(params.gamma > 0.0 && std::isfinite(params.gamma), "power: gamma must be positive");
  return PayoffFamily(params);
}

PayoffFamily PayoffFamily::tabulated(std::vector<double> xs, std::vector<double> ys) {
  return PayoffFamily(PiecewiseLinear(std::move(xs), std::move(ys)));
}

PayoffFamily PayoffFamily::custom(std::string name, Function f, Function derivative,
                                  double domain_end) {
  require(static_cast<bool>(f), "custom: payoff callable is empty");
  require(domain_end > 0.0, "custom: domain must be nonempty");
  return PayoffFamily(Custom{std::move(name), std::move(f), std::move(derivative), domain_end});
}

PayoffKind PayoffFamily::kind() const noexcept {
  return std::visit(Overloaded{
                        [](const CfmmParams&) { return PayoffKind::CfmmArbitrage; },
                        [](const PowerParams&) { return PayoffKind::Power; },
                        [](const PiecewiseLinear&) { return PayoffKind::Tabulated; },
                        [](const Custom&) { return PayoffKind::Custom; },
                    },
                    repr_);
}

double PayoffFamily::eval(double t) const {
  if (!(t >= 0.0)) throw DomainError("payoff: argument must be nonnegative");
  if (t > domain_end()) {
    std::ostringstream msg;
    msg << "payoff: t=" << t << " beyond domain end " << domain_end();
    throw DomainError(msg.str());
  }
  if (t == 0.0) return 0.0;
  return std::visit(Overloaded{
                        [t](const CfmmParams& p) { return p.pool().forward(t) - p.c * t; },
                        [t](const PowerParams& p) { return std::pow(t, p.beta) - p.gamma * t; },
                        [t](const PiecewiseLinear& table) { return table.value(t); },
                        [t](const Custom& c) { return c.f(t); },
                    },
                    repr_);
}

double PayoffFamily::derivative(double t, const PayoffTolerances& tol) const {
  if (!(t >= 0.0)) throw DomainError("payoff derivative: argument must be nonnegative");
  return std::visit(
      Overloaded{
          [t](const CfmmParams& p) { return p.pool().forward_derivative(t) - p.c; },
          [t](const PowerParams& p) { return p.beta * std::pow(t, p.beta - 1.0) - p.gamma; },
          [&](const PiecewiseLinear&) { return finite_difference(t, tol); },
          [&](const Custom& c) { return c.df ? c.df(t) : finite_difference(t, tol); },
      },
      repr_);
}

double PayoffFamily::finite_difference(double t, const PayoffTolerances& tol) const {
  const double h = tol.fd_step_rel * std::max(1.0, t);
  const double lo = std::max(0.0, t - h);
  const double hi = std::min(domain_end(), t + h);
  if (!(hi > lo)) throw DomainError("payoff derivative: empty stencil");
  if (const auto* table = std::get_if<PiecewiseLinear>(&repr_)) {
    // Inside one segment the central difference is that segment's slope.
    const std::size_t k = table->segment(lo);
    if (hi <= table->xs()[k + 1]) return table->segment_slope(lo);
  }
  return (eval(hi) - eval(lo)) / (hi - lo);
}

bool PayoffFamily::has_analytic_derivative() const noexcept {
  if (const auto* c = std::get_if<Custom>(&repr_)) return static_cast<bool>(c->df);
  return !std::holds_alternative<PiecewiseLinear>(repr_);
}

double PayoffFamily::domain_end() const noexcept {
  if (const auto* table = std::get_if<PiecewiseLinear>(&repr_)) return table->domain_end();
  if (const auto* c = std::get_if<Custom>(&repr_)) return c->domain_end;
  return std::numeric_limits<double>::infinity();
}

const CfmmParams* PayoffFamily::cfmm_params() const noexcept {
  return std::get_if<CfmmParams>(&repr_);
}
const PowerParams* PayoffFamily::power_params() const noexcept {
  return std::get_if<PowerParams>(&repr_);
}
const PiecewiseLinear* PayoffFamily::table() const noexcept {
  return std::get_if<PiecewiseLinear>(&repr_);
}

std::string PayoffFamily::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const CfmmParams& p) {
                   out << "cfmm(gamma=" << p.gamma << ", r1=" << p.r1 << ", r2=" << p.r2
                       << ", c=" << p.c << ")";
                 },
                 [&](const PowerParams& p) {
                   out << "power(beta=" << p.beta << ", gamma=" << p.gamma << ")";
                 },
                 [&](const PiecewiseLinear& t) { out << "table(" << t.xs().size() << " points)"; },
                 [&](const Custom& c) { out << "custom(" << c.name << ")"; },
             },
             repr_);
  return out.str();
}

// ---------------------------------------------------------------------------

double pro_rata_payoff(const PayoffFamily& family, double x_i, double y_i) {
  if (!(x_i >= 0.0) || !(y_i >= 0.0)) {
    throw DomainError("pro_rata_payoff: contributions must be nonnegative");
  }
  if (x_i == 0.0) return 0.0;
  const double total = x_i + y_i;
  return x_i * family.eval(total) / total;
}

PayoffDiagnostics find_root_w(const PayoffFamily& family, const PayoffTolerances& tol) {
  const auto f = [&family](double t) { return family.eval(t); };
  const double end = family.domain_end();

  // A concave f with f(0) = 0 is positive exactly on an interval (0, w), so
  // halving from the unit scale finds a positive point whenever one exists.
  double z = std::min(1.0, end);
  bool found = false;
  for (int k = 0; k <= 80; ++k, z *= 0.5) {
    if (f(z) > 0.0) {
      found = true;
      break;
    }
  }
  if (!found) {
    throw NoPositiveRegion(family.describe() + ": f <= 0 at every probe in (0, 1]");
  }

  // Double until f turns nonpositive.
  const double cap = tol.expansion_cap * std::max(1.0, z);
  double lo = z;
  double hi = z;
  while (true) {
    if (hi >= end) {
      if (f(end) > 0.0) {
        throw NoFiniteRoot(family.describe() + ": f positive through end of domain");
      }
      hi = end;
      break;
    }
    const double next = std::min(2.0 * hi, end);
    if (next > cap) {
      throw NoFiniteRoot(family.describe() + ": f positive past expansion cap");
    }
    if (f(next) <= 0.0) {
      hi = next;
      break;
    }
    lo = next;
    hi = next;
  }

  PayoffDiagnostics out;
  const auto slope = [&](double t) { return family.derivative(t, tol); };
  GoldenResult peak = maximize_unimodal(f, slope, 0.0, hi);
  if (!(peak.value > 0.0) || f(lo) > peak.value) {
    peak.x = lo;
    peak.value = f(lo);
  }
  out.argmax = peak.x;
  out.sup_f = peak.value;
  out.positivity_witness = peak.x;

  BisectOptions bisect;
  bisect.rel_tol = tol.bracket_rel;
  // bisect_root treats f(hi) == 0 as the root; f(argmax) > 0 on the left.
  out.w = bisect_root(f, out.argmax, hi, bisect);
  return out;
}

}  // namespace prorata
