#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace kirch {

/// Exact integer used for every matrix entry, minor and transpedance value.
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer& value) { return value.str(); }

inline bool fits_int64(const Integer& value) {
  return value >= std::numeric_limits<std::int64_t>::min() &&
         value <= std::numeric_limits<std::int64_t>::max();
}

/// (-1)^k as an int.
constexpr int parity_sign(std::size_t k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace kirch
