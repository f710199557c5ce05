#pragma once

#include <stdexcept>
#include <string>

namespace gpage {

// Caller passed a value outside the documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but breaks a structural constraint (e.g. a Bogoliubov
// pair that does not preserve the anticommutation relations).
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A post-condition the library checks on its own output did not hold.
class InternalConsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or series truncation failed to reach the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request would exceed a hard size guard (e.g. 2^N amplitudes).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpage
