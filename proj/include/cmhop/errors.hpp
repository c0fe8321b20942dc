#pragma once

#include <stdexcept>
#include <string>

namespace cmhop {

// Bad argument value (out-of-range parameter, malformed input).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called in a state that does not allow it.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A configured resource limit (stub cap) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Not enough data to form an estimate.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cmhop
