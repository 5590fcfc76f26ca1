#pragma once

#include <stdexcept>
#include <string>

namespace altosc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole of the potential.
class InfinitePotentialError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Operation called with a configuration it does not apply to (e.g. wrong geometry).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hyperboloid state outside the discrete spectrum.
class NotBoundStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite intermediate or solver failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-validation check (panel doubling, truncation growth, tail bound) failed.
class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace altosc
