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
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmckit/algebra/prime_field.hpp"

namespace qmckit {

/// Univariate polynomial over a prime field.
///
/// Coefficients are stored lowest degree first and kept canonical: the
/// vector never ends in a zero, so the zero polynomial is the empty vector
/// and `degree()` reports `kZeroDegree` for it.
class Poly {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  explicit Poly(PrimeField field) : field_(field) {}

  Poly(PrimeField field, const std::vector<std::int64_t>& coeffs) : field_(field) {
    coeffs_.reserve(coeffs.size());
    for (auto c : coeffs) coeffs_.push_back(field_.reduce(c));
    trim();
  }

  Poly(PrimeField field, std::initializer_list<std::int64_t> coeffs)
      : Poly(field, std::vector<std::int64_t>(coeffs)) {}

  Poly(PrimeField field, std::vector<FieldElement> coeffs, bool reduce = true)
      : field_(field), coeffs_(std::move(coeffs)) {
    if (reduce) {
      for (auto& c : coeffs_) c %= field_.modulus();
    }
    trim();
  }

  static Poly constant(PrimeField field, FieldElement c) {
    return Poly(field, std::vector<FieldElement>{c});
  }
  static Poly monomial(PrimeField field, int degree, FieldElement c = 1) {
    std::vector<FieldElement> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return Poly(field, std::move(v));
  }
  static Poly x(PrimeField field) { return monomial(field, 1); }

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  const std::vector<FieldElement>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept {
    return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
  }
  FieldElement leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  bool is_monic() const noexcept { return leading() == 1; }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  /// Coefficient of x^i, zero beyond the stored range.
  FieldElement operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0;
  }

  FieldElement eval(FieldElement a) const noexcept {
    FieldElement r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      r = field_.add(field_.mul(r, a), *it);
    }
    return r;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(leading()));
  }

  Poly scaled(FieldElement c) const {
    std::vector<FieldElement> v(coeffs_);
    for (auto& a : v) a = field_.mul(a, c);
    return Poly(field_, std::move(v), false);
  }

  /// Multiply by x^k.
  Poly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<FieldElement> v(static_cast<std::size_t>(k), 0);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Poly(field_, std::move(v), false);
  }

  /// Keep only the terms of degree < n.
  Poly truncated(std::size_t n) const {
    if (coeffs_.size() <= n) return *this;
    return Poly(field_, std::vector<FieldElement>(coeffs_.begin(), coeffs_.begin() + n), false);
  }

  Poly derivative() const {
    std::vector<FieldElement> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      v.push_back(field_.mul(coeffs_[i], static_cast<FieldElement>(i % field_.modulus())));
    }
    return Poly(field_, std::move(v), false);
  }

  Poly operator-() const {
    std::vector<FieldElement> v(coeffs_);
    for (auto& a : v) a = field_.neg(a);
    return Poly(field_, std::move(v), false);
  }

  friend Poly operator+(const Poly& f, const Poly& g) {
    f.check_same_field(g);
    std::vector<FieldElement> v(std::max(f.coeffs_.size(), g.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.field_.add(f[i], g[i]);
    return Poly(f.field_, std::move(v), false);
  }

  friend Poly operator-(const Poly& f, const Poly& g) {
    f.check_same_field(g);
    std::vector<FieldElement> v(std::max(f.coeffs_.size(), g.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.field_.sub(f[i], g[i]);
    return Poly(f.field_, std::move(v), false);
  }

  friend Poly operator*(const Poly& f, const Poly& g) {
    f.check_same_field(g);
    if (f.is_zero() || g.is_zero()) return Poly(f.field_);
    const std::uint64_t p = f.modulus();
    std::vector<std::uint64_t> acc(f.coeffs_.size() + g.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
      if (f.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < g.coeffs_.size(); ++j) {
        acc[i + j] = (acc[i + j] + std::uint64_t{f.coeffs_[i]} * g.coeffs_[j]) % p;
      }
    }
    std::vector<FieldElement> v(acc.begin(), acc.end());
    return Poly(f.field_, std::move(v), false);
  }

  Poly& operator+=(const Poly& g) { return *this = *this + g; }
  Poly& operator-=(const Poly& g) { return *this = *this - g; }
  Poly& operator*=(const Poly& g) { return *this = *this * g; }

  friend bool operator==(const Poly& f, const Poly& g) noexcept {
    return f.field_ == g.field_ && f.coeffs_ == g.coeffs_;
  }

  /// Canonical total order: by degree, then lexicographically on the
  /// coefficient vector with the constant term compared first.
  friend std::strong_ordering operator<=>(const Poly& f, const Poly& g) noexcept {
    if (auto c = f.degree() <=> g.degree(); c != 0) return c;
    return std::lexicographical_compare_three_way(f.coeffs_.begin(), f.coeffs_.end(),
                                                  g.coeffs_.begin(), g.coeffs_.end());
  }

  /// Human-readable form such as "x^2 + 2x + 1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const FieldElement c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (c != 1 || i == 0) os << c;
      if (i >= 1) os << 'x';
      if (i >= 2) os << '^' << i;
    }
    return os.str();
  }

  void check_same_field(const Poly& g) const {
    if (!(field_ == g.field_)) {
      throw std::invalid_argument("polynomials over different fields: p=" +
                                  std::to_string(modulus()) + " vs p=" +
                                  std::to_string(g.modulus()));
    }
  }

 private:
  void trim() noexcept {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  PrimeField field_;
  std::vector<FieldElement> coeffs_;
};

/// Quotient and remainder with deg(remainder) < deg(divisor).
inline std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  f.check_same_field(g);
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  const PrimeField& F = f.field();
  if (f.degree() < g.degree()) return {Poly(F), f};
  std::vector<FieldElement> rem(f.coefficients());
  const auto& gc = g.coefficients();
  const std::size_t dg = gc.size() - 1;
  const FieldElement lead_inv = F.inv(g.leading());
  std::vector<FieldElement> quot(rem.size() - dg, 0);
  for (std::size_t i = rem.size(); i-- > dg;) {
    const FieldElement c = F.mul(rem[i], lead_inv);
    quot[i - dg] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) {
      rem[i - dg + j] = F.sub(rem[i - dg + j], F.mul(c, gc[j]));
    }
  }
  rem.resize(dg);
  return {Poly(F, std::move(quot), false), Poly(F, std::move(rem), false)};
}

inline Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }
inline Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }

/// Monic greatest common divisor; gcd(0, 0) is an error.
inline Poly gcd(Poly f, Poly g) {
  f.check_same_field(g);
  if (f.is_zero() && g.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  while (!g.is_zero()) {
    Poly r = f % g;
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

inline Poly pow(const Poly& f, std::uint64_t e) {
  Poly result = Poly::constant(f.field(), 1);
  Poly base = f;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

inline Poly pow_mod(const Poly& f, std::uint64_t e, const Poly& modulus) {
  Poly result = Poly::constant(f.field(), 1) % modulus;
  Poly base = f % modulus;
  while (e > 0) {
    if (e & 1U) result = (result * base) % modulus;
    e >>= 1U;
    if (e > 0) base = (base * base) % modulus;
  }
  return result;
}

/// k-th Hasse-Teichmueller derivative: sum_i C(i,k) a_i x^(i-k), with the
/// binomials reduced mod p by Lucas' theorem.
inline Poly hasse_derivative(const Poly& g, std::uint64_t k) {
  if (k == 0) return g;
  const PrimeField& F = g.field();
  const auto& c = g.coefficients();
  if (c.size() <= k) return Poly(F);
  std::vector<FieldElement> v(c.size() - k, 0);
  for (std::size_t i = k; i < c.size(); ++i) {
    if (c[i] != 0) v[i - k] = F.mul(F.binomial(i, k), c[i]);
  }
  return Poly(F, std::move(v), false);
}

/// The unique polynomial of degree < q taking value values[a] at each a in F_q.
inline Poly interpolate(const PrimeField& F, const std::vector<FieldElement>& values) {
  const std::uint32_t q = F.modulus();
  if (values.size() != q) throw std::invalid_argument("interpolation needs one value per field element");
  // Lagrange basis over all of F_q: L_a(x) = prod_{c != a} (x - c) / (a - c).
  Poly result(F);
  for (FieldElement a = 0; a < q; ++a) {
    if (values[a] % q == 0) continue;
    Poly basis = Poly::constant(F, 1);
    FieldElement denom = 1;
    for (FieldElement c = 0; c < q; ++c) {
      if (c == a) continue;
      basis *= Poly(F, std::vector<FieldElement>{F.neg(c), 1}, false);
      denom = F.mul(denom, F.sub(a, c));
    }
    result += basis.scaled(F.mul(values[a] % q, F.inv(denom)));
  }
  return result;
}

/// Comma-separated coefficient list, lowest degree first ("1,0,1").
inline std::string format_coefficients(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(f.coefficients()[i]);
  }
  return out;
}

inline Poly parse_coefficients(PrimeField field, std::string_view text) {
  std::vector<std::int64_t> v;
  std::string token;
  auto flush = [&] {
    const auto first = token.find_first_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty coefficient in list");
    const auto last = token.find_last_not_of(" \t");
    const std::string t = token.substr(first, last - first + 1);
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad coefficient '" + t + "'");
    }
    if (used != t.size()) throw std::invalid_argument("bad coefficient '" + t + "'");
    v.push_back(value);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else {
      token += ch;
    }
  }
  flush();
  return Poly(field, v);
}

/// Serialized form: a "p=<prime>" header line followed by the coefficient list.
inline std::string serialize(const Poly& f) {
  return "p=" + std::to_string(f.modulus()) + "\n" + format_coefficients(f) + "\n";
}

inline Poly deserialize_poly(std::string_view text) {
  const auto nl = text.find_first_of("\n;");
  if (text.substr(0, 2) != "p=" || nl == std::string_view::npos) {
    throw std::invalid_argument("polynomial text must start with a 'p=<prime>' header");
  }
  const std::string header(text.substr(2, nl - 2));
  std::uint64_t p = 0;
  try {
    p = std::stoull(header);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad modulus header 'p=" + header + "'");
  }
  std::string_view body = text.substr(nl + 1);
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);
  return parse_coefficients(PrimeField(p), body);
}

}  // namespace qmckit
