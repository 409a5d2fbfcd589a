#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation that needs at least one atom is handed the zero measure.
class DegenerateMeasure : public Error {
 public:
  using Error::Error;
};

class ZeroDirection : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument violates a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// FFT padding for a product-measure power would exceed the configured budget.
class GridOverflow : public Error {
 public:
  using Error::Error;
};

/// Malformed input. `where` is a JSON pointer or "line:column" locator.
class ParseError : public Error {
 public:
  ParseError(std::string where, std::string message)
      : Error(where.empty() ? message : where + ": " + message), where_(std::move(where)), message_(std::move(message)) {}

  const std::string& where() const noexcept { return where_; }
  /// The diagnostic without the location prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string where_;
  std::string message_;
};

}  // namespace conelab
