#pragma once

#include <stdexcept>
#include <string>

namespace hpofla {

/// Bad user input: malformed files, unknown columns, invalid flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant did not hold. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hpofla
