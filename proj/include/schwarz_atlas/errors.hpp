#pragma once

#include <stdexcept>
#include <string>

namespace schwarz_atlas {

/// Bad input: malformed rationals, invalid root-system types, violated
/// preconditions. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver a trustworthy answer (step-size
/// underflow, non-convergent series, degenerate least-squares system).
/// The CLI maps these to exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer exponent difference: local solutions carry logarithmic terms,
/// which this library does not handle.
class LogCaseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Evaluation point lies on a toric mirror h^alpha = 1.
class MirrorSingularity : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace schwarz_atlas
