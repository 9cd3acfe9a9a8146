#pragma once

#include <array>
#include <charconv>
#include <string>

namespace irlink {

/// Shortest text that parses back to exactly `v` ('.' decimal separator,
/// locale independent).
inline std::string fmt_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

/// Fixed-point with `digits` decimals, locale independent.
inline std::string fmt_fixed(double v, int digits) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
  return std::string(buf.data(), end);
}

}  // namespace irlink
