#pragma once

// 128-bit integer helpers. J-characteristics are bounded by N, but sums of
// squared J values over all C(m,s) subsets need up to ~2^90 for m = 30, so
// word-count numerators are carried as __int128 throughout.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wordcount {

using Int128 = __int128;

inline Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

inline std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                            : static_cast<unsigned __int128>(v);
  char buf[48];
  int pos = 48;
  while (u > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  std::string out;
  if (neg) out.push_back('-');
  out.append(buf + pos, buf + 48);
  return out;
}

inline Int128 parse_int128(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = (text[0] == '-');
    i = 1;
  }
  if (i == text.size()) throw std::invalid_argument("sign without digits");
  unsigned __int128 acc = 0;
  constexpr unsigned __int128 limit =
      (~static_cast<unsigned __int128>(0)) >> 1;  // INT128_MAX
  const unsigned __int128 bound = limit + (neg ? 1 : 0);
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9')
      throw std::invalid_argument("invalid digit in integer literal");
    const auto digit = static_cast<unsigned>(c - '0');
    if (acc > (bound - digit) / 10)
      throw std::out_of_range("integer literal exceeds 128 bits");
    acc = acc * 10 + digit;
  }
  if (neg) return -static_cast<Int128>(acc);
  return static_cast<Int128>(acc);
}

}  // namespace wordcount
