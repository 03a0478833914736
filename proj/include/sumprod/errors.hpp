#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sumprod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what)
      : Error(what + ": input set is empty") {}
};

/// Invalid parameter or precondition violation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Text input that does not follow one of the documented formats. `line` is
/// 1-based, or 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line == 0 ? msg : "line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sumprod
