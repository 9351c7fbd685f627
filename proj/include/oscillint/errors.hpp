#pragma once

#include <stdexcept>

namespace oscillint {

/// Bad input: malformed config, out-of-domain argument, inconsistent spec.
/// Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A grid or ladder cannot support the requested computation: insufficient
/// resolution, dual range, or spectral coverage. Maps to CLI exit code 2.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oscillint
