#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace dcost {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (non-square, mismatched rows, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (non-finite entries, t_f <= 0,
/// evaluation outside [0, t_f], asymmetric input to a symmetric solver).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive method ran out of budget.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::size_t iterations, double estimate = 0.0,
                 double error_bound = 0.0)
      : Error(what), iterations_(iterations), estimate_(estimate), error_bound_(error_bound) {}

  std::size_t iterations() const { return iterations_; }
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  std::size_t iterations_;
  double estimate_;
  double error_bound_;
};

/// The controllability Gramian is too close to singular to invert.
class IllConditionedError : public NumericalError {
 public:
  IllConditionedError(const std::string& what, double horizon, double condition)
      : NumericalError(what, 0, condition), horizon_(horizon) {}

  double horizon() const { return horizon_; }
  double condition() const { return estimate(); }

 private:
  double horizon_;
};

/// Malformed model or configuration file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string field, long row = -1)
      : Error(what), field_(std::move(field)), row_(row) {}

  const std::string& field() const { return field_; }
  /// Offending matrix row, or -1 when the error is not tied to a row.
  long row() const { return row_; }

 private:
  std::string field_;
  long row_;
};

/// Well-formed input that violates a model invariant, e.g. an uncontrollable pair.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, long rank = -1) : Error(what), rank_(rank) {}

  long rank() const { return rank_; }

 private:
  long rank_;
};

/// Invalid run configuration (CLI flags or config file values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcost
