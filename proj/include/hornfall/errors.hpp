#pragma once

#include <stdexcept>
#include <string>

namespace hornfall {

// Base for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A variable occurs twice in one clause (including positive vs. negative).
struct DuplicateVariable : Error {
  using Error::Error;
};

// More than one positive literal was requested for a single clause.
struct HornViolation : Error {
  using Error::Error;
};

// Variable id outside 1..n, or an otherwise invalid numeric argument.
struct OutOfRange : Error {
  using Error::Error;
};

// round(d1*n) exceeds n-1: not enough distinct variables for the units.
struct DensityTooHigh : Error {
  using Error::Error;
};

// n is too small for the requested clause lengths.
struct NTooSmall : Error {
  using Error::Error;
};

// Malformed input text; carries 1-based line and column of the offence.
struct SyntaxError : Error {
  int line;
  int column;
  SyntaxError(const std::string& msg, int line_, int column_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

// A parsed clause has two or more positive literals.
struct NonHornClause : Error {
  int line;
  NonHornClause(const std::string& msg, int line_)
      : Error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

// Declared for API completeness; root_t0 returns t0=0, phi=1 for the
// rootless d1=0 case instead of throwing (see theory.hpp).
struct NoRootFound : Error {
  using Error::Error;
};

// Requested tolerance below what double bisection can deliver.
struct ToleranceTooSmall : Error {
  using Error::Error;
};

// Adaptive integrator could not proceed (step underflow near t=1).
struct StepFailure : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

// Output file could not be created or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace hornfall
