#pragma once

#include <stdexcept>
#include <string>

namespace binfar {

// Base class for all binfar runtime errors. Argument/precondition violations
// throw std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigensolver or other numerical routine failed to converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// Rotation matrix H is not invertible (eigenvalue at or below tolerance).
class SingularRotationError : public Error {
 public:
  using Error::Error;
};

// Binary outcome vector is constant; the MLE does not exist.
class DegenerateOutcomeError : public Error {
 public:
  using Error::Error;
};

// Design is rank deficient beyond the ridge fallback.
class SingularDesignError : public Error {
 public:
  using Error::Error;
};

// Perfect separation detected: likelihood unbounded in some direction.
class SeparationError : public Error {
 public:
  using Error::Error;
};

// Every bootstrap refit failed.
class BootstrapFailureError : public Error {
 public:
  using Error::Error;
};

// ROC requested on single-class labels.
class DegenerateLabelsError : public Error {
 public:
  using Error::Error;
};

// Pseudo-R^2 outside its domain (e.g. constrained log-likelihood of zero).
class UndefinedMeasureError : public Error {
 public:
  using Error::Error;
};

// CSV / input file could not be parsed; message names the offending line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Stationarity transform failed (e.g. log of a nonpositive value).
class TransformError : public Error {
 public:
  using Error::Error;
};

// Assembled sample is empty or below the configured floor.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace binfar
