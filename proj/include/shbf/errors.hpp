#pragma once

#include <stdexcept>
#include <string>

namespace shbf {

/// Decrement of a zero counter. Raised before any counter is modified.
class CounterUnderflow : public std::underflow_error {
 public:
  using std::underflow_error::underflow_error;
};

/// An element's multiplicity would exceed the filter's maximum count.
class CapacityExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed serialized filter, companion table or trace file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shbf
