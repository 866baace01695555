#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zrelay {

/// Bit vector indexed by significance: bits[i] carries weight 2^i and maps
/// onto element i of a port or probe. Text renderings are written
/// most-significant bit first, the a_k ... a_0 order.
using Bits = std::vector<bool>;

inline std::string bits_to_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) s.push_back(*it ? '1' : '0');
  return s;
}

inline std::optional<Bits> bits_from_string(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Bits bits(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[text.size() - 1 - i];
    if (c != '0' && c != '1') return std::nullopt;
    bits[i] = c == '1';
  }
  return bits;
}

inline Bits bits_from_value(std::uint64_t value, std::size_t width) {
  Bits bits(width);
  for (std::size_t i = 0; i < width; ++i) bits[i] = (value >> i) & 1u;
  return bits;
}

inline std::uint64_t bits_value(const Bits& bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v |= std::uint64_t{1} << i;
  return v;
}

}  // namespace zrelay
