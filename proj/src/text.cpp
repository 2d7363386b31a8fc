#include "that/text.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace that {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double out = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return out;
}

}  // namespace that
