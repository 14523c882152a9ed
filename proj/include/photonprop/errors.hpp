#pragma once

#include <stdexcept>
#include <string>

namespace photonprop {

/// Argument outside the documented domain of a special function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A model precondition does not hold (invalid parameters, unsupported regime).
class ValidityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested combination is not covered by a closed-form solution.
class UnsupportedError : public ValidityError {
 public:
  using ValidityError::ValidityError;
};

/// Quadrature or spectral refinement failed to reach its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace photonprop
