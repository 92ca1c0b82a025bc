#pragma once

#include <stdexcept>
#include <string>

namespace bosoncast {

// Caller supplied something outside an operation's preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Broadcast boundaries are only defined for the degraded regime eta > 1/2.
class UnsupportedRegimeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Correlation matrix or density matrix that is not a physical state.
class InvalidStateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failure: non-convergence, truncation overflow, bad grid.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class QuadratureError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace bosoncast
