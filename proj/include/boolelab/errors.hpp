#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boolelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed term text. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("column " + std::to_string(position + 1) + ": " + message),
        position_(position),
        detail_(message) {}

  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

/// Malformed input file (algebra, theory, problem or trace text).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A variable or operation symbol that the evaluation context does not know.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Two algebras, or an algebra and a theory, disagree on their signature.
class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

/// A configurable enumeration limit was exceeded.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t value, std::size_t limit)
      : Error(what + " is " + std::to_string(value) + ", above the limit of " + std::to_string(limit)),
        value_(value),
        limit_(limit) {}

  std::size_t value() const { return value_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t value_;
  std::size_t limit_;
};

}  // namespace boolelab
