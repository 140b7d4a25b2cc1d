#pragma once

#include <stdexcept>
#include <string>

namespace retrodiff {

/// Base of every error raised by the library. `what()` is prefixed with the
/// originating module ("core: ...", "sde: ...").
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A grid does not capture the mass of the density it is asked to hold.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Density evaluated where it has (numerically) no support.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Explicit time step violates a stability bound.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// Model lacks the structure an integrator needs.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace retrodiff
