#include "bribery/integer.hpp"

#include <cctype>

namespace bribery {

std::size_t to_index(const Int& value, std::size_t limit) {
  if (value < 0) throw std::invalid_argument("negative value used as an index");
  if (value > limit) {
    throw CapExceeded("value " + to_string(value) + " exceeds table limit " + std::to_string(limit));
  }
  return value.convert_to<std::size_t>();
}

std::int64_t to_int64(const Int& value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min()) {
    throw CapExceeded("value " + to_string(value) + " does not fit in 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
    }
  }
  Int result(std::string(text.substr(start)));
  return text[0] == '-' ? Int(-result) : result;
}

std::string to_string(const Int& value) { return value.str(); }

Int pow_int(const Int& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

}  // namespace bribery
