#pragma once

#include <stdexcept>
#include <string>

namespace prorata {

// Base of every exception thrown by the library. The CLI maps each subclass to
// an exit code, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* code() const noexcept { return "error"; }
};

// Argument outside an operation's domain (negative quantity, t past the last
// abscissa of a table, malformed parameters).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "domain_error"; }
};

// f <= 0 on every sampled point: the game has only the trivial equilibrium.
class NoPositiveRegion : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "no_positive_region"; }
};

// f stays positive past the bracket expansion cap: no equilibrium exists.
class NoFiniteRoot : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "no_finite_root"; }
};

class NoEquilibrium : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "no_equilibrium"; }
};

class NonPositiveNetDemand : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "non_positive_net_demand"; }
};

class NumericFailure : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "numeric_failure"; }
};

}  // namespace prorata
