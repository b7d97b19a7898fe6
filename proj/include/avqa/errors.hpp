#pragma once

#include <stdexcept>

namespace avqa {

/// Malformed circuit, gate, or dimension mismatch.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem too large for an exhaustive or dense representation.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace avqa
