#include "prorata/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prorata/error.hpp"

namespace prorata {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool bracket_exhausted(double lo, double hi, double abs_tol) {
  const double scale = std::max(std::abs(lo), std::abs(hi));
  return hi - lo <= std::max(abs_tol, 4.0 * kEps * scale);
}

}  // namespace

GoldenResult golden_section_maximize(const std::function<double(double)>& objective,
                                     double lo, double hi, const GoldenOptions& options) {
  if (!(hi >= lo)) {
    throw DomainError("golden_section_maximize: empty interval [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (bracket_exhausted(a, b, options.abs_tol)) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  GoldenResult out;
  out.lo = a;
  out.hi = b;
  out.iterations = it;
  if (fc >= fd) {
    out.x = c;
    out.value = fc;
  } else {
    out.x = d;
    out.value = fd;
  }
  return out;
}

double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   const BisectOptions& options) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (std::isnan(flo) || std::isnan(fhi)) {
    throw NumericFailure("bisect_root: NaN at bracket endpoint");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NumericFailure("bisect_root: no sign change on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
  for (int it = 0; it < options.max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= options.rel_tol * scale + options.abs_tol) break;
    const double fm = fn(mid);
    if (std::isnan(fm)) throw NumericFailure("bisect_root: NaN inside bracket");
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

GoldenResult maximize_unimodal(const std::function<double(double)>& objective,
                               const std::function<double(double)>& slope, double lo,
                               double hi, const GoldenOptions& options) {
  GoldenResult golden = golden_section_maximize(objective, lo, hi, options);
  if (!slope || hi <= lo) return golden;

  auto polish = [&](double a, double b) -> bool {
    const double sa = slope(a);
    const double sb = slope(b);
    if (!(sa > 0.0) || !(sb < 0.0)) return false;
    const double root = bisect_root(slope, a, b);
    golden.x = root;
    golden.value = objective(root);
    return true;
  };

  const double window =
      std::max({64.0 * (golden.hi - golden.lo), 1e-6 * std::abs(golden.x), 1e-9 * (hi - lo)});
  if (polish(std::max(lo, golden.x - window), std::min(hi, golden.x + window))) return golden;
  polish(lo, hi);
  return golden;
}

}  // namespace prorata
