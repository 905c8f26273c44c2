#pragma once

#include <stdexcept>
#include <string>

namespace hybrid_search {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition (e.g. mismatched widths).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A model constraint (such as promise admissibility) does not hold.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds what an engine can represent.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant broke at runtime (norm drift, scan exhaustion).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace hybrid_search
