#pragma once

#include <stdexcept>

namespace swipt {

// Invalid argument values or malformed inputs (sizes, ranges, units).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested constraint cannot be met by any allocation of this frame.
class InfeasibleConstraint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solver refused to run because it would exceed a size or memory guard.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Power budget cannot fit under the per-subcarrier cap (budget > n * cap).
class ResourceInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation that needs at least one subcarrier received none.
class EmptySetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serialization was asked to emit zero records.
class EmptyResultError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File or stream failure; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swipt
