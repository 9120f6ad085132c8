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
#include <vector>

#include "qmckit/algebra/polynomial.hpp"

namespace qmckit {

/// Ben-Or test: a monic f of degree d is irreducible iff
/// gcd(x^(p^i) - x mod f, f) = 1 for every 1 <= i <= d/2.
inline bool is_irreducible(const Poly& f) {
  const int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const Poly g = f.monic();
  const Poly x = Poly::x(g.field());
  Poly power = x % g;
  for (int i = 1; i <= d / 2; ++i) {
    power = pow_mod(power, g.modulus(), g);
    if (!gcd(g, power - x).is_one()) return false;
  }
  return true;
}

/// All monic polynomials of exactly degree d over F_p, in the canonical
/// order: non-leading coefficients compared lexicographically with the
/// constant term first.
inline std::vector<Poly> monic_polynomials_of_degree(PrimeField field, int degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  const std::uint32_t p = field.modulus();
  std::uint64_t total = 1;
  for (int i = 0; i < degree; ++i) {
    total *= p;
    if (total > (1ULL << 26)) throw std::length_error("too many monic polynomials to enumerate");
  }
  std::vector<Poly> out;
  out.reserve(total);
  std::vector<FieldElement> digits(static_cast<std::size_t>(degree) + 1, 0);
  digits.back() = 1;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // idx written in base p with the constant term as the most significant digit.
    std::uint64_t rest = idx;
    for (int i = degree - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<FieldElement>(rest % p);
      rest /= p;
    }
    out.emplace_back(field, digits, false);
  }
  return out;
}

/// The first `count` monic irreducibles over F_p, by nondecreasing degree and
/// in canonical order within each degree.
inline std::vector<Poly> monic_irreducibles(std::uint64_t p, std::size_t count) {
  if (count == 0) throw std::invalid_argument("monic_irreducibles: count must be >= 1");
  const PrimeField field(p);
  std::vector<Poly> out;
  for (int d = 1; out.size() < count; ++d) {
    for (auto& f : monic_polynomials_of_degree(field, d)) {
      if (is_irreducible(f)) {
        out.push_back(std::move(f));
        if (out.size() == count) break;
      }
    }
  }
  return out;
}

}  // namespace qmckit
