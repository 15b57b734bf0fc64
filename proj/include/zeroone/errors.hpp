#ifndef ZEROONE_ERRORS_HPP
#define ZEROONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zeroone {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched matrix/permutation orders.
struct DimensionError : Error {
  using Error::Error;
};

// Bad token in a textual matrix, SNF vector or hex value.
struct ParseError : Error {
  using Error::Error;
};

// A row word is out of range for the declared order.
struct MalformedMatrixError : Error {
  using Error::Error;
};

// Checked integer arithmetic left the configured width.
struct OverflowError : Error {
  using Error::Error;
};

// A precondition on a run configuration failed (budgets, flags).
struct ConfigError : Error {
  using Error::Error;
};

// Required level inputs are missing for a derived computation.
struct DependencyError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace zeroone

#endif
