#pragma once

#include <stdexcept>
#include <string>

namespace strip {

/// Bad input: violated preconditions, malformed configs, incompatible data.
/// The CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The vertical velocity reconstructed from u does not vanish at y = 1,
/// i.e. d_x of the vertical mean of u is not zero.
class CompatibilityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Dirichlet rows of a field are not zero.
class BoundaryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Run-time numerical failure: instability, overflow, exhausted analytic band.
/// The CLI maps this family to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strip
