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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmckit {

/// a/N = [0; a_1, ..., a_k] with 0 < a < N and gcd(a, N) = 1.
struct ContinuedFraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  std::vector<std::uint64_t> quotients;

  std::uint64_t max_quotient() const {
    return quotients.empty() ? 0 : *std::max_element(quotients.begin(), quotients.end());
  }
};

/// Folds [0; a_1, ..., a_k] back into a reduced fraction (p, q).
inline std::pair<std::uint64_t, std::uint64_t> fold_quotients(const std::vector<std::uint64_t>& qs) {
  // Evaluate from the innermost term outwards: x = 1 / (a_i + x).
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
    const std::uint64_t next_den = *it * den + num;
    num = den;
    den = next_den;
  }
  return {num, den};
}

/// Euclidean expansion in canonical form (last quotient >= 2 whenever the
/// expansion has two or more terms). With `alternate`, the equivalent
/// expansion ending in 1 is returned instead.
inline ContinuedFraction continued_fraction(std::uint64_t a, std::uint64_t n, bool alternate = false) {
  if (!(0 < a && a < n)) {
    throw std::invalid_argument("continued_fraction needs 0 < a < N, got a=" + std::to_string(a) +
                                ", N=" + std::to_string(n));
  }
  if (std::gcd(a, n) != 1) {
    throw std::invalid_argument("continued_fraction needs gcd(a, N) = 1, got a=" +
                                std::to_string(a) + ", N=" + std::to_string(n));
  }
  ContinuedFraction cf{a, n, {}};
  std::uint64_t num = n;
  std::uint64_t den = a;
  while (den != 0) {
    cf.quotients.push_back(num / den);
    const std::uint64_t r = num % den;
    num = den;
    den = r;
  }
  if (cf.quotients.size() >= 2 && cf.quotients.back() == 1) {
    cf.quotients.pop_back();
    ++cf.quotients.back();
  }
  if (alternate && cf.quotients.back() >= 2) {
    --cf.quotients.back();
    cf.quotients.push_back(1);
  }
  return cf;
}

/// Largest partial quotient of a/N without materializing the expansion.
inline std::uint64_t max_partial_quotient(std::uint64_t a, std::uint64_t n) {
  std::uint64_t best = 0;
  while (a != 0) {
    best = std::max(best, n / a);
    const std::uint64_t r = n % a;
    n = a;
    a = r;
  }
  return best;
}

/// Smallest a in [1, N) coprime to N whose partial quotients are all <= c.
inline std::optional<std::uint64_t> zaremba_search(std::uint64_t n, std::uint64_t c) {
  if (n < 2) throw std::invalid_argument("zaremba_search needs N >= 2");
  if (c < 1) throw std::invalid_argument("zaremba_search needs c >= 1");
  for (std::uint64_t a = 1; a < n; ++a) {
    // The first quotient is floor(N/a), so small a can be skipped outright.
    if (n / a > c) continue;
    if (std::gcd(a, n) != 1) continue;
    if (max_partial_quotient(a, n) <= c) return a;
  }
  return std::nullopt;
}

struct ZarembaRow {
  unsigned m = 0;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> witness;
  std::vector<std::uint64_t> quotients;
};

/// Witnesses for N = base^m, m = 1..m_max, at partial-quotient bound c.
inline std::vector<ZarembaRow> zaremba_table(std::uint64_t base, unsigned m_max, std::uint64_t c) {
  if (base < 2) throw std::invalid_argument("zaremba_table needs base >= 2");
  std::uint64_t largest = 1;
  for (unsigned m = 1; m <= m_max; ++m) {
    if (largest > (1ULL << 40) / base) throw std::overflow_error("base^m too large for zaremba_table");
    largest *= base;
  }
  std::vector<ZarembaRow> rows;
  std::uint64_t n = 1;
  for (unsigned m = 1; m <= m_max; ++m) {
    n *= base;
    ZarembaRow row{m, n, zaremba_search(n, c), {}};
    if (row.witness) row.quotients = continued_fraction(*row.witness, n).quotients;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qmckit
