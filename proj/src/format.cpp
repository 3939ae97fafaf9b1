#include "riskaware/format.hpp"

#include <array>
#include <charconv>

namespace riskaware {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

}  // namespace riskaware
