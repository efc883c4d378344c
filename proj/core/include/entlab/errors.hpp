#pragma once

#include <stdexcept>
#include <string>

namespace entlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or subsystem dimensions do not fit the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A bipartite-only operation received a shape with the wrong number of factors.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input violates a mathematical precondition (Hermiticity, positivity, unit trace).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A physical parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A closed-form entry is undefined at the requested parameters (division by zero).
class SingularEntryError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Sweep or CLI configuration is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical failure inside a sweep, annotated with the offending grid point.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace entlab
