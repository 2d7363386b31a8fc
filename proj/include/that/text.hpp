#pragma once

#include <string>
#include <string_view>

namespace that {

/// Formats with 17 significant digits so parse_double round-trips bit-exactly.
std::string format_double(double v);

/// Strict full-string parse; throws std::invalid_argument on any leftover.
double parse_double(std::string_view text);

}  // namespace that
