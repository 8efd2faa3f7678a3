#pragma once

#include <stdexcept>
#include <string>

namespace stieltjes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or interval lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A function returned a non-finite value, violated its bound, or hit a
/// domain restriction (log, sqrt) while being evaluated.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Malformed construction arguments (ordering, zero masses, inadmissible
/// jump values, inconsistent segments).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The inputs do not satisfy the hypotheses an operation needs
/// (e.g. signed masses handed to a Lebesgue-Stieltjes routine).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A jump does not follow the right-continuous convention.
class ConventionError : public PreconditionError {
 public:
  ConventionError(const std::string& what, double location)
      : PreconditionError(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Partial data is insufficient to decide existence or a value.
class CannotCertifyError : public Error {
 public:
  using Error::Error;
};

/// Jump locations of a generated family stop increasing: the family has an
/// accumulation point.
class AccumulationError : public CannotCertifyError {
 public:
  using CannotCertifyError::CannotCertifyError;
};

/// Refinement ran out of levels before successive sums stabilized.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// f and F share a discontinuity but no divergence witness exists.
class NoWitnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace stieltjes
