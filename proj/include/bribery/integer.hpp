#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bribery {

// Weights produced by the hardness reductions (3^n * s_i and friends) do not
// fit fixed-width integers, so every weight, price, multiplicity, budget and
// score is arbitrary precision.
using Int = boost::multiprecision::cpp_int;

// Thrown when an instance is too large for an engine that enumerates or
// tabulates over its numbers (DP tables, oracle search, m! enumeration).
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Converts a nonnegative Int used as a table index. Throws CapExceeded when
// the value is beyond `limit`.
std::size_t to_index(const Int& value, std::size_t limit = std::size_t{1} << 26);

// Narrowing for engines that work in 64-bit arithmetic.
std::int64_t to_int64(const Int& value);

Int parse_int(std::string_view text);
std::string to_string(const Int& value);

Int pow_int(const Int& base, unsigned exponent);

}  // namespace bribery
