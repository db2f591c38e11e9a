#pragma once

#include <stdexcept>
#include <string>

namespace scoutnav {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tables, files, or parameter sets.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A world position outside the grid it is queried against.
class OutOfBounds : public Error {
 public:
  using Error::Error;
};

/// Singular fits, failed factorizations, non-converging quadrature.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class EmptyPhaseError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularFitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IllConditionedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Operator target rejected because it sits inside a hazard polygon.
class HazardTargetError : public Error {
 public:
  using Error::Error;
};

/// Wraps a module error with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace scoutnav
