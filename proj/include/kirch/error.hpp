#pragma once

#include <stdexcept>
#include <string>

namespace kirch {

/// Malformed graphs, unknown vertices, violated preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request the library refuses to serve: enumeration over its cap, a
/// permanent beyond the size guard, or a method that does not apply to the
/// given graph.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kirch
