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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmckit {

/// Element of a prime field, always kept reduced into [0, p).
using FieldElement = std::uint32_t;

/// Largest modulus accepted; keeps every product inside 64 bits.
inline constexpr std::uint64_t kMaxFieldModulus = (1ULL << 31) - 1;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// The prime field F_p. Elements are plain integers; the field object
/// carries the modulus and performs the reductions.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p > kMaxFieldModulus || !is_prime(p)) {
      throw std::invalid_argument("field modulus must be a prime below 2^31, got " +
                                  std::to_string(p));
    }
  }

  std::uint32_t modulus() const noexcept { return p_; }

  FieldElement reduce(std::int64_t v) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<FieldElement>(r);
  }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<FieldElement>(s >= p_ ? s - p_ : s);
  }
  FieldElement sub(FieldElement a, FieldElement b) const noexcept {
    return a >= b ? a - b : static_cast<FieldElement>(std::uint64_t{a} + p_ - b);
  }
  FieldElement neg(FieldElement a) const noexcept { return a == 0 ? 0 : p_ - a; }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    return static_cast<FieldElement>((std::uint64_t{a} * b) % p_);
  }

  FieldElement pow(FieldElement a, std::uint64_t e) const noexcept {
    std::uint64_t base = a % p_;
    std::uint64_t r = 1 % p_;
    while (e > 0) {
      if (e & 1U) r = (r * base) % p_;
      base = (base * base) % p_;
      e >>= 1U;
    }
    return static_cast<FieldElement>(r);
  }

  /// Multiplicative inverse by the extended Euclidean algorithm.
  FieldElement inv(FieldElement a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
    std::int64_t r0 = p_, r1 = a % p_;
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      std::int64_t tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
    }
    return reduce(s0);
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  /// True iff a = z^2 for some nonzero z (Euler's criterion; every element
  /// of F_2 other than 0 qualifies).
  bool is_nonzero_square(FieldElement a) const noexcept {
    if (a == 0) return false;
    if (p_ == 2) return true;
    return pow(a, (p_ - 1) / 2) == 1;
  }

  /// Binomial coefficient C(n, k) mod p via Lucas' theorem.
  FieldElement binomial(std::uint64_t n, std::uint64_t k) const {
    if (k > n) return 0;
    FieldElement r = 1;
    while (k > 0 || n > 0) {
      const std::uint64_t nd = n % p_;
      const std::uint64_t kd = k % p_;
      if (kd > nd) return 0;
      r = mul(r, small_binomial(static_cast<FieldElement>(nd), static_cast<FieldElement>(kd)));
      n /= p_;
      k /= p_;
    }
    return r;
  }

  bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

 private:
  // C(n, k) for n < p, where no factor of p appears in n!.
  FieldElement small_binomial(FieldElement n, FieldElement k) const {
    if (k > n - k) k = n - k;
    FieldElement num = 1;
    FieldElement den = 1;
    for (FieldElement i = 0; i < k; ++i) {
      num = mul(num, n - i);
      den = mul(den, i + 1);
    }
    return div(num, den);
  }

  std::uint32_t p_;
};

}  // namespace qmckit
