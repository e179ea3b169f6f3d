#pragma once

#include <stdexcept>
#include <string>

namespace chinu {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed presentation text; carries 1-based line/column of the offending token.
struct ParseError : Error {
  int line;
  int col;
  ParseError(int line, int col, const std::string& msg)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
};

/// A resource budget was exhausted (coset limit, element-enumeration threshold).
struct LimitError : Error {
  using Error::Error;
};

/// Arguments violate a precondition (alphabet mismatch, mixed domains, bad index).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace chinu
