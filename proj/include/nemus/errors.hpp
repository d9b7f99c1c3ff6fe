#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nemus {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax fault in KB or clause text. Line and column are 1-based.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

// Well-formed text that violates a semantic rule (arity, groundness, ...).
// line is 0 when the fault is not tied to one place in the file.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg, std::size_t line = 0)
      : Error(line == 0 ? msg : std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

struct UnknownCode : Error {
  using Error::Error;
};

struct UnknownInstance : Error {
  using Error::Error;
};

struct ArityError : Error {
  using Error::Error;
};

struct PreconditionFault : Error {
  using Error::Error;
};

struct RangeRestrictionFault : Error {
  using Error::Error;
};

}  // namespace nemus
