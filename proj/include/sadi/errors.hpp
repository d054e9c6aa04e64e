#pragma once

#include <stdexcept>
#include <string>

namespace sadi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: mismatched types, cards outside a deck, bad syntax.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The instance lies outside the preconditions of the requested solver.
/// This is not a proof of unsolvability.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A protocol violated the protocol definition (empty action set, an action
/// not containing the actual deal, a run exceeding the length guard, ...).
class ProtocolDefect : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because the deal space is too large.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A count does not fit in 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace sadi
