#pragma once

#include <stdexcept>
#include <string>

namespace frac_heat {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable (e.g. Gamma beyond the double range).
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A numerical method did not reach its accuracy target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Contour quadrature node landed too close to a singularity of the integrand.
class ContourError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Fewer usable data points than a fit or estimate needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace detail
}  // namespace frac_heat
