// Copyright 2026 The qmckit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qmckit {

/// Fractional part of a real number as a 128-bit binary fraction
/// (value = fraction / 2^128).
using Fixed128 = unsigned __int128;

/// A Kronecker direction with the text it was parsed from.
struct KroneckerAlpha {
  Fixed128 fraction = 0;
  std::string label;
};

namespace detail {

inline Fixed128 low_128_bits(const boost::multiprecision::cpp_int& v) {
  using boost::multiprecision::cpp_int;
  const cpp_int mask = (cpp_int(1) << 128) - 1;
  const cpp_int low = v & mask;
  const auto lo = static_cast<std::uint64_t>(low & cpp_int(~std::uint64_t{0}));
  const auto hi = static_cast<std::uint64_t>(low >> 64);
  return (static_cast<Fixed128>(hi) << 64) | lo;
}

inline bool is_perfect_square(std::uint64_t d) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d)));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r * r == d;
}

}  // namespace detail

/// frac(sqrt(d)) truncated to 128 bits, from floor(sqrt(d * 2^256)).
inline Fixed128 fixed_from_sqrt(std::uint64_t d) {
  using boost::multiprecision::cpp_int;
  const cpp_int scaled = cpp_int(d) << 256;
  return detail::low_128_bits(boost::multiprecision::sqrt(scaled));
}

/// frac(x) for a decimal string such as "0.6180339887" or "-1.25",
/// truncated towards -infinity at 2^-128.
inline Fixed128 fixed_from_decimal(std::string_view text) {
  using boost::multiprecision::cpp_int;
  std::string_view t = text;
  bool negative = false;
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  cpp_int digits = 0;
  cpp_int scale = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char ch : t) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits = digits * 10 + (ch - '0');
      if (seen_point) scale *= 10;
      seen_digit = true;
    } else {
      throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
  const cpp_int one = cpp_int(1) << 128;
  cpp_int scaled = (digits << 128) / scale;
  if (negative) {
    // floor(-x * 2^128) = -ceil(x * 2^128); reduce mod 2^128.
    const bool exact = ((digits << 128) % scale) == 0;
    scaled = -(scaled + (exact ? 0 : 1));
    scaled %= one;
    if (scaled < 0) scaled += one;
  }
  return detail::low_128_bits(scaled);
}

/// Parses "sqrt(d)" for a non-square integer d, or a decimal string.
inline KroneckerAlpha parse_alpha(std::string_view text) {
  if (text.substr(0, 5) == "sqrt(" && text.size() > 6 && text.back() == ')') {
    const std::string inner(text.substr(5, text.size() - 6));
    std::size_t used = 0;
    std::uint64_t d = 0;
    try {
      d = std::stoull(inner, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != inner.size() || inner.empty()) {
      throw std::invalid_argument("bad sqrt argument in '" + std::string(text) + "'");
    }
    if (detail::is_perfect_square(d)) {
      throw std::invalid_argument("sqrt(" + inner + ") is rational; pass it as a decimal");
    }
    return {fixed_from_sqrt(d), std::string(text)};
  }
  return {fixed_from_decimal(text), std::string(text)};
}

/// frac(n * alpha) for alpha held as a 128-bit fraction.
inline Fixed128 fractional_multiple(Fixed128 alpha, std::uint64_t n) noexcept {
  return alpha * static_cast<Fixed128>(n);
}

/// Top 53 bits of the fraction as a double; always strictly below 1.
inline double fixed_to_double(Fixed128 v) noexcept {
  return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(v >> 75)), -53);
}

}  // namespace qmckit
