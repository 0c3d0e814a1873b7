#pragma once

#include <stdexcept>
#include <string>

namespace qgs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (inadmissible fusion labels, negative shifted index, degenerate regime).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A request exceeds a configured size limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A coefficient vector references indices outside 1..n_alpha.
class InvalidVector : public Error {
 public:
  using Error::Error;
};

/// A numerically realized object failed its own invariants.
class NumericalDegradation : public Error {
 public:
  NumericalDegradation(const std::string& what, double worst_residual)
      : Error(what + " (worst residual " + std::to_string(worst_residual) + ")"),
        worst_residual_(worst_residual) {}
  double worst_residual() const { return worst_residual_; }

 private:
  double worst_residual_;
};

/// An internal cross-check that must hold by construction did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgs
