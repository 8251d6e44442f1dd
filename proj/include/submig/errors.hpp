#pragma once

#include <stdexcept>
#include <string>

namespace submig {

/// Bad input value or precondition violation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure (e.g. SVD did not converge).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called on an object in the wrong state (e.g. rank not selected).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed scene, MSR, or image file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace submig
