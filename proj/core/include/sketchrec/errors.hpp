#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sketchrec {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a data invariant (duplicate ids, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Inputs that were supposed to come from the same source disagree.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// Geometric precondition failure: zero displacement, too few points, bad splits.
class GeometryError : public Error {
public:
  using Error::Error;
};

} // namespace sketchrec
