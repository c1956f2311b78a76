#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace jroc {

/// Shortest decimal form that parses back to exactly the same double.
/// The canonical number format for every CSV this project emits.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Fixed-precision form used for SVG coordinates.
inline std::string format_fixed(double v, int digits) {
  char buf[64];
  int len = std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace jroc
