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

// Brute-force reference computations. Each one avoids the code path it
// checks; trial division stands in for the kernel and Ben-Or tests, for example.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmckit/algebra/irreducible.hpp"
#include "qmckit/algebra/linear_algebra.hpp"
#include "qmckit/algebra/polynomial.hpp"
#include "qmckit/pointsets.hpp"
#include "qmckit/quality.hpp"

namespace qmckit::oracle {

/// Irreducible iff no monic polynomial of degree 1..deg/2 divides f.
inline bool irreducible_by_trial_division(const Poly& f) {
  const int d = f.degree();
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k) {
    for (const auto& g : monic_polynomials_of_degree(f.field(), k)) {
      if ((f % g).is_zero()) return false;
    }
  }
  return true;
}

/// Factor multiset by repeated trial division with monic polynomials of
/// increasing degree; each factor appears once per multiplicity, sorted.
inline std::vector<Poly> factor_by_trial_division(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("trial division needs deg f >= 1");
  std::vector<Poly> out;
  Poly rest = f.monic();
  for (int k = 1; 2 * k <= rest.degree(); ++k) {
    for (const auto& g : monic_polynomials_of_degree(f.field(), k)) {
      while (rest.degree() >= k) {
        auto [q, r] = divmod(rest, g);
        if (!r.is_zero()) break;
        out.push_back(g);
        rest = std::move(q);
      }
      if (2 * k > rest.degree()) break;
    }
  }
  if (rest.degree() >= 1) out.push_back(rest);
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum NRT weight of the nonzero vectors of span(basis), by enumerating
/// every linear combination.
inline std::size_t min_nrt_weight_by_enumeration(const std::vector<std::vector<FieldElement>>& basis,
                                                 std::uint32_t b, std::size_t s, std::size_t m) {
  const PrimeField F(b);
  const std::size_t dim = basis.size();
  std::size_t best = m + 1;
  std::vector<FieldElement> coeff(dim, 0);
  std::vector<FieldElement> v(s * m, 0);
  std::uint64_t total = checked_power(b, dim);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t k = 0; k < dim; ++k) {
      coeff[k] = static_cast<FieldElement>(rest % b);
      rest /= b;
    }
    std::fill(v.begin(), v.end(), 0);
    for (std::size_t k = 0; k < dim; ++k) {
      if (coeff[k] == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = F.add(v[c], F.mul(coeff[k], basis[k][c]));
    }
    best = std::min(best, nrt_weight(v, s, m));
  }
  return best;
}

/// Truncated dual-lattice sum of prod_j r(h_j)^-2, r(h) = max(1, |h|), over
/// 0 < |h|_inf <= H with a.h = 0 mod N, together with a rigorous bound on
/// the omitted tail: every dropped h has some |h_j| > H, so the tail is at
/// most s * (2/H) * (1 + pi^2/3)^(s-1).
struct TruncatedDualSum {
  double sum = 0.0;
  double tail_bound = 0.0;
};

inline TruncatedDualSum p2_truncated_dual_sum(std::span<const std::int64_t> a, std::uint64_t n_points,
                                              std::int64_t h_max) {
  const std::size_t s = a.size();
  if (s == 0 || s > 3) throw std::invalid_argument("dual-sum oracle supports 1 <= s <= 3");
  const auto big_n = static_cast<std::int64_t>(n_points);
  auto weight = [](std::int64_t h) {
    const double r = h == 0 ? 1.0 : static_cast<double>(h < 0 ? -h : h);
    return 1.0 / (r * r);
  };
  auto mod = [big_n](__int128 v) {
    const auto r = static_cast<std::int64_t>(v % big_n);
    return r < 0 ? r + big_n : r;
  };
  // Fold the last coordinate into a residue table: last[c] = sum of weights
  // of h_s in [-H, H] with a_s h_s = c mod N.
  std::vector<long double> last(n_points, 0.0L);
  for (std::int64_t h = -h_max; h <= h_max; ++h) last[mod(static_cast<__int128>(a[s - 1]) * h)] += weight(h);

  long double total = 0.0L;
  std::vector<std::int64_t> h(s - 1, -h_max);
  const std::uint64_t outer = s == 1 ? 1 : static_cast<std::uint64_t>(std::pow(2 * h_max + 1, s - 1));
  for (std::uint64_t idx = 0; idx < outer; ++idx) {
    std::uint64_t rest = idx;
    long double w = 1.0L;
    __int128 dot = 0;
    for (std::size_t j = 0; j + 1 < s; ++j) {
      h[j] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(2 * h_max + 1)) - h_max;
      rest /= static_cast<std::uint64_t>(2 * h_max + 1);
      w *= weight(h[j]);
      dot += static_cast<__int128>(a[j]) * h[j];
    }
    total += w * last[mod(-dot)];
  }
  // Remove h = 0, which always satisfies the congruence with weight 1.
  total -= 1.0L;
  const double c = 1.0 + std::numbers::pi * std::numbers::pi / 3.0;
  return {static_cast<double>(total),
          static_cast<double>(s) * (2.0 / static_cast<double>(h_max)) * std::pow(c, static_cast<double>(s) - 1.0)};
}

/// Elementary-interval counting straight from the definition: every box is
/// enumerated and every point tested against it. Small sets only; used to
/// cross-check the verifier itself.
inline std::size_t minimal_t_by_interval_enumeration(const PointSet& p, std::uint64_t b, std::size_t m) {
  const std::size_t s = p.dimension();
  const std::uint64_t n = p.size();
  for (std::size_t t = 0; t <= m; ++t) {
    bool ok = true;
    const std::uint64_t expected = checked_power(b, t);
    detail::for_each_composition(m - t, s, m, [&](const std::vector<std::size_t>& d) {
      std::uint64_t cells = 1;
      for (auto dj : d) cells *= checked_power(b, dj);
      for (std::uint64_t cell = 0; cell < cells && ok; ++cell) {
        std::vector<std::uint64_t> offset(s);
        std::uint64_t rest = cell;
        for (std::size_t j = s; j-- > 0;) {
          offset[j] = rest % checked_power(b, d[j]);
          rest /= checked_power(b, d[j]);
        }
        std::uint64_t count = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
          bool inside = true;
          for (std::size_t j = 0; j < s && inside; ++j) {
            // a/b^d <= x < (a+1)/b^d  <=>  a*den <= num*b^d < (a+1)*den
            const unsigned __int128 lhs = static_cast<unsigned __int128>(p.numerator(i, j)) * checked_power(b, d[j]);
            const unsigned __int128 lo = static_cast<unsigned __int128>(offset[j]) * p.denominator(j);
            inside = lo <= lhs && lhs < lo + p.denominator(j);
          }
          if (inside) ++count;
        }
        if (count != expected) ok = false;
      }
      return ok;
    });
    if (ok) return t;
  }
  return m;
}

}  // namespace qmckit::oracle
