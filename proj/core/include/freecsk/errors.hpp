#pragma once

#include <stdexcept>
#include <string>

namespace freecsk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the admissible domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The argument hits a pole or the support of the measure.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing, limit extrapolation or an iteration failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance. Carries the best estimate
/// obtained before giving up.
class AccuracyError : public NumericError {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : NumericError(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// A truncated moment sequence is too short for the requested order.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// The representation does not support the operation (e.g. integrating an
/// arbitrary function against a bare moment sequence).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed measure-spec document. `location()` is a JSON pointer or a byte
/// offset, whichever the failure could be pinned to.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string location)
      : Error(location.empty() ? what : location + ": " + what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace freecsk
