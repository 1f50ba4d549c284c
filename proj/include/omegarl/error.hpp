#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omegarl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a semantic requirement (bad distribution,
/// unsupported acceptance, incomplete automaton, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver ran out of iterations.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, double residual)
      : Error(message + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace omegarl
