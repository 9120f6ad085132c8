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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmckit/algebra/linear_algebra.hpp"
#include "qmckit/algebra/polynomial.hpp"

namespace qmckit {

struct Factor {
  Poly poly;
  std::uint32_t multiplicity;
};

struct FactorizationResult {
  Poly input;
  /// Leading coefficient of the input.
  FieldElement content = 0;
  /// Monic irreducible factors, sorted by the canonical polynomial order.
  std::vector<Factor> factors;

  /// content * prod factor^multiplicity.
  Poly reassemble() const {
    Poly out = Poly::constant(input.field(), content);
    for (const auto& f : factors) out *= pow(f.poly, f.multiplicity);
    return out;
  }
};

namespace detail {

inline void require_operator_input(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("factorizer needs deg f >= 1");
  if (!f.is_monic()) throw std::invalid_argument("factorizer operator needs a monic f");
  if (f[0] == 0) throw std::invalid_argument("factorizer operator needs f(0) != 0");
}

/// First n coefficients of the power series h/f in x; f(0) must be nonzero.
inline std::vector<FieldElement> power_series_quotient(const Poly& h, const Poly& f, std::size_t n) {
  const PrimeField& F = f.field();
  const FieldElement f0_inv = F.inv(f[0]);
  const auto& fc = f.coefficients();
  std::vector<FieldElement> out(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    FieldElement acc = h[k];
    const std::size_t upto = std::min(k, fc.size() - 1);
    for (std::size_t j = 1; j <= upto; ++j) acc = F.sub(acc, F.mul(fc[j], out[k - j]));
    out[k] = F.mul(acc, f0_inv);
  }
  return out;
}

}  // namespace detail

/// f^q * H^(q-1)(h/f) - h^q, where H^k is the k-th Hasse-Teichmueller
/// derivative and q = p is the field size. Its kernel is spanned by the
/// f g'/g for the irreducible factors g of a squarefree f, because
/// H^(q-1)(1/(x-a)) = (x-a)^-q. In characteristic 2 the sign is immaterial.
///
/// h/f is expanded as a power series in x through x^(q*deg f - 1). The exact
/// value f^q * H^(q-1)(h/f) is a polynomial of degree <= q*(deg f - 1), and
/// truncating the series perturbs only degrees >= q*deg f - q + 1, so the
/// product is cut back to degree q*(deg f - 1).
inline Poly niederreiter_operator(const Poly& f, const Poly& h) {
  f.check_same_field(h);
  detail::require_operator_input(f);
  if (h.degree() >= f.degree()) throw std::invalid_argument("operator needs deg h < deg f");
  const PrimeField& F = f.field();
  const std::uint32_t q = f.modulus();
  const auto d = static_cast<std::size_t>(f.degree());

  Poly series(F, detail::power_series_quotient(h, f, q * d), false);
  Poly derived = hasse_derivative(series, q - 1);
  Poly main = (pow(f, q) * derived).truncated(q * (d - 1) + 1);

  // h^q = h(x^q) over F_p.
  std::vector<FieldElement> frob;
  if (!h.is_zero()) {
    frob.assign(static_cast<std::size_t>(h.degree()) * q + 1, 0);
    for (std::size_t i = 0; i < h.coefficients().size(); ++i) frob[i * q] = h.coefficients()[i];
  }
  return main - Poly(F, std::move(frob), false);
}

/// Basis of {h : deg h < deg f, operator(f, h) = 0}, from the images of the
/// monomials 1, x, ..., x^(deg f - 1) and Gaussian elimination over F_p.
inline std::vector<Poly> kernel_basis(const Poly& f) {
  detail::require_operator_input(f);
  const PrimeField& F = f.field();
  const auto d = static_cast<std::size_t>(f.degree());
  const std::size_t rows = static_cast<std::size_t>(f.modulus()) * d + 1;
  Matrix op(rows, d, 0);
  for (std::size_t col = 0; col < d; ++col) {
    const Poly image = niederreiter_operator(f, Poly::monomial(F, static_cast<int>(col)));
    for (std::size_t r = 0; r < image.coefficients().size(); ++r) op(r, col) = image[r];
  }
  std::vector<Poly> basis;
  for (auto& v : null_space(F, op)) basis.emplace_back(F, std::move(v), false);
  return basis;
}

namespace detail {

inline void append_factor(std::vector<Factor>& out, Poly p, std::uint32_t mult) {
  for (auto& f : out) {
    if (f.poly == p) {
      f.multiplicity += mult;
      return;
    }
  }
  out.push_back({std::move(p), mult});
}

/// Squarefree decomposition of a monic f: pairs (g_i, i) with f = prod g_i^i.
inline std::vector<Factor> squarefree_decomposition(const Poly& f) {
  const PrimeField& F = f.field();
  const std::uint32_t p = f.modulus();
  std::vector<Factor> out;
  if (f.degree() < 1) return out;
  const Poly df = f.derivative();
  if (df.is_zero()) {
    // f = g(x^p) = g(x)^p since the p-th power map fixes F_p.
    std::vector<FieldElement> root;
    for (std::size_t i = 0; i < f.coefficients().size(); i += p) root.push_back(f.coefficients()[i]);
    for (auto& [g, m] : squarefree_decomposition(Poly(F, std::move(root), false))) {
      append_factor(out, std::move(g), m * p);
    }
    return out;
  }
  Poly c = gcd(f, df);
  Poly w = f / c;
  std::uint32_t i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly part = w / y;
    if (part.degree() > 0) append_factor(out, part.monic(), i);
    w = std::move(y);
    c = c / w;
    ++i;
  }
  if (c.degree() > 0) {
    for (auto& [g, m] : squarefree_decomposition(c.monic())) append_factor(out, std::move(g), m);
  }
  return out;
}

/// Splits a monic squarefree f with f(0) != 0 into irreducibles.
///
/// Kernel elements of a squarefree f are h = sum_i c_i f g_i'/g_i over the
/// irreducible factors g_i, and f' is the element with every c_i = 1, so
/// gcd(f, h - c f') collects the g_i with c_i = c. A basis element that is
/// not a multiple of f' has two distinct c_i and yields a proper split.
inline void split_squarefree(const Poly& f, std::vector<Poly>& out) {
  if (f.degree() <= 1) {
    out.push_back(f);
    return;
  }
  const auto basis = kernel_basis(f);
  if (basis.size() <= 1) {
    out.push_back(f);
    return;
  }
  const Poly df = f.derivative();
  for (const auto& h : basis) {
    for (FieldElement c = 0; c < f.modulus(); ++c) {
      const Poly candidate = h - df.scaled(c);
      if (candidate.is_zero()) continue;
      Poly g = gcd(f, candidate);
      if (g.degree() > 0 && g.degree() < f.degree()) {
        split_squarefree(g, out);
        split_squarefree(f / g, out);
        return;
      }
    }
  }
  throw std::logic_error("kernel of dimension " + std::to_string(basis.size()) +
                         " produced no split of " + f.to_string());
}

}  // namespace detail

inline void require_supported_characteristic(std::uint32_t p) {
  if (p != 2 && p != 3 && p != 5) {
    throw std::invalid_argument("factor supports characteristic 2, 3 or 5 only, got p=" +
                                std::to_string(p));
  }
}

/// Complete factorization over F_p, p in {2, 3, 5}.
inline FactorizationResult factor(const Poly& f) {
  require_supported_characteristic(f.modulus());
  if (f.degree() < 1) throw std::invalid_argument("factor needs deg f >= 1");
  const PrimeField& F = f.field();
  FactorizationResult result{f, f.leading(), {}};

  Poly g = f.monic();
  std::uint32_t x_power = 0;
  while (g[0] == 0) {
    g = g / Poly::x(F);
    ++x_power;
  }
  if (x_power > 0) result.factors.push_back({Poly::x(F), x_power});

  for (const auto& [part, mult] : detail::squarefree_decomposition(g)) {
    std::vector<Poly> irreducibles;
    detail::split_squarefree(part, irreducibles);
    for (auto& q : irreducibles) detail::append_factor(result.factors, std::move(q), mult);
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  return result;
}

}  // namespace qmckit
