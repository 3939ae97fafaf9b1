#pragma once

#include <string>

namespace riskaware {

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace riskaware
