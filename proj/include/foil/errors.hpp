#pragma once

#include <stdexcept>
#include <string>

namespace foil {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical / syntactic error with 1-based source position.
struct ParseError : Error {
  int line;
  int col;
  ParseError(const std::string& what, int line_, int col_)
      : Error(what + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

// Violated precondition or semantic contract (wrong signature, capture, ...).
struct DomainError : Error {
  using Error::Error;
};

// Input exceeds a documented size budget of an oracle-grade operation.
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace foil
