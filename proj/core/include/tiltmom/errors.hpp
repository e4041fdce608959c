#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tiltmom {

/// Base class of every error this library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in an expression source string. Carries the byte offset of
/// the first offending character.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what_arg)
      : Error(what_arg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Domain violation during evaluation (log of a non-positive value,
/// division by zero, fractional power of a non-positive base).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Failure to invert h (bracket not found, non-monotone h detected).
class InversionError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what_arg, double error_estimate)
      : Error(what_arg), error_estimate_(error_estimate) {}

  double error_estimate() const { return error_estimate_; }

 private:
  double error_estimate_ = 0.0;
};

/// Malformed run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tiltmom
