#pragma once

#include <stdexcept>
#include <string>

namespace pav {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Work budget exhausted while factoring; caller should supply a cache entry.
struct FactoringTimeout : Error {
  using Error::Error;
};

// Field or set exceeds the configured enumeration / table budget.
struct OrderTooLarge : Error {
  using Error::Error;
};

struct NoLogTable : Error {
  using Error::Error;
};

struct ZeroElement : Error {
  using Error::Error;
};

struct NotADivisor : Error {
  using Error::Error;
};

// A proved character-sum bound failed numerically; indicates a bug, never
// expected to fire on valid inputs.
struct BoundViolated : Error {
  using Error::Error;
};

struct PrecisionExhausted : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// Malformed or unverifiable cache file line.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace pav
