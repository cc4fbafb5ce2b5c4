#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzyl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A domain rule was broken: invalid system, failed precondition, unknown
/// symbol or label.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Carries a 1-based line and column.
class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : DomainError("line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured enumeration cap was exceeded. Results are never truncated
/// silently; the caller gets this instead.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzzyl
