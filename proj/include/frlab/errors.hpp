#pragma once

#include <stdexcept>
#include <string>

namespace frlab {

/// A parameter lies outside the domain where the quantity is defined
/// (alpha <= -1, n < 1, x <= 0 for log-gamma, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called with inputs that violate its stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A series or adaptive rule ran out of its budget before meeting tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An evaluation point lies beyond the configured boundary cutoff.
class BoundaryError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace frlab
