#pragma once

#include <stdexcept>
#include <string>

namespace critlab {

/// Raised when inputs violate an operation's preconditions (bad parameters,
/// mismatched grids, malformed configuration).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an iterative method fails to produce a usable answer.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace critlab
