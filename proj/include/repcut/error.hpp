#pragma once

#include <stdexcept>
#include <string>

namespace repcut {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad node or edge references, dimension mismatches.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but fails a semantic check (e.g. lifted-cut
/// label conditions, rounding parameters).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The instance admits no feasible solution.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A fixed-q enumeration was refused because q exceeds its cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// The exhaustive oracle ran past its node or time limits.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace repcut
