#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace gadmp {

/// 17 significant digits, enough to round-trip any double.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, end);
}

}  // namespace gadmp
