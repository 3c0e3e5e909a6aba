#pragma once

#include <stdexcept>
#include <string>

namespace tubescan {

// Bad input: parse failures, off-curve points, dimension mismatch,
// degenerate parameters. CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iteration, precision or enumeration budget exhausted. CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tubescan
