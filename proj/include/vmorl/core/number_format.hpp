#pragma once

#include <string>
#include <string_view>

namespace vmorl {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_exact(double x);

/// Parses the whole of `text` as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

}  // namespace vmorl
