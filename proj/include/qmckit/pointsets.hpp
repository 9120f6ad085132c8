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
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmckit/algebra/irreducible.hpp"
#include "qmckit/algebra/laurent_series.hpp"
#include "qmckit/algebra/linear_algebra.hpp"
#include "qmckit/algebra/polynomial.hpp"
#include "qmckit/fixed_point.hpp"

namespace qmckit {

enum class Representation { kExactRational, kFloat };

inline const char* to_string(Representation r) {
  return r == Representation::kExactRational ? "exact_rational" : "float";
}

/// What produced a point set: a construction name plus its parameters as
/// strings, kept sorted so serialized descriptors are reproducible.
struct Provenance {
  std::string kind;
  std::map<std::string, std::string> params;
};

/// N points in [0,1)^s, stored row-major.
///
/// Exact point sets keep an integer numerator per coordinate and one
/// denominator per dimension; the double view is always available.
class PointSet {
 public:
  PointSet() = default;

  static PointSet exact(std::size_t dimension, std::size_t size,
                        std::vector<std::uint64_t> numerators,
                        std::vector<std::uint64_t> denominators, Provenance provenance) {
    if (numerators.size() != dimension * size || denominators.size() != dimension) {
      throw std::invalid_argument("exact point set: storage does not match N x s");
    }
    PointSet p;
    p.dimension_ = dimension;
    p.size_ = size;
    p.representation_ = Representation::kExactRational;
    p.values_.resize(numerators.size());
    for (std::size_t j = 0; j < dimension; ++j) {
      if (denominators[j] == 0) throw std::invalid_argument("exact point set: zero denominator");
    }
    for (std::size_t i = 0; i < numerators.size(); ++i) {
      const std::uint64_t den = denominators[i % dimension];
      if (numerators[i] >= den) {
        throw std::invalid_argument("exact point set: coordinate " + std::to_string(numerators[i]) +
                                    "/" + std::to_string(den) + " not in [0,1)");
      }
      p.values_[i] = static_cast<double>(numerators[i]) / static_cast<double>(den);
    }
    p.numerators_ = std::move(numerators);
    p.denominators_ = std::move(denominators);
    p.provenance_ = std::move(provenance);
    return p;
  }

  static PointSet floating(std::size_t dimension, std::size_t size, std::vector<double> values,
                           Provenance provenance) {
    if (values.size() != dimension * size) {
      throw std::invalid_argument("point set: storage does not match N x s");
    }
    for (double v : values) {
      if (!(v >= 0.0 && v < 1.0)) {
        throw std::invalid_argument("point set: coordinate " + std::to_string(v) + " not in [0,1)");
      }
    }
    PointSet p;
    p.dimension_ = dimension;
    p.size_ = size;
    p.representation_ = Representation::kFloat;
    p.values_ = std::move(values);
    p.provenance_ = std::move(provenance);
    return p;
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return size_; }
  Representation representation() const noexcept { return representation_; }
  bool is_exact() const noexcept { return representation_ == Representation::kExactRational; }
  const Provenance& provenance() const noexcept { return provenance_; }

  double value(std::size_t n, std::size_t j) const { return values_[n * dimension_ + j]; }
  std::span<const double> point(std::size_t n) const {
    return {values_.data() + n * dimension_, dimension_};
  }
  const std::vector<double>& values() const noexcept { return values_; }

  std::uint64_t numerator(std::size_t n, std::size_t j) const {
    require_exact();
    return numerators_[n * dimension_ + j];
  }
  std::uint64_t denominator(std::size_t j) const {
    require_exact();
    return denominators_[j];
  }
  const std::vector<std::uint64_t>& numerators() const noexcept { return numerators_; }
  const std::vector<std::uint64_t>& denominators() const noexcept { return denominators_; }

  /// Exact sets compare on numerators and denominators, float sets on values.
  friend bool operator==(const PointSet& a, const PointSet& b) {
    if (a.dimension_ != b.dimension_ || a.size_ != b.size_ ||
        a.representation_ != b.representation_) {
      return false;
    }
    if (a.is_exact()) return a.numerators_ == b.numerators_ && a.denominators_ == b.denominators_;
    return a.values_ == b.values_;
  }

 private:
  void require_exact() const {
    if (!is_exact()) throw std::logic_error("point set has no exact representation");
  }

  std::size_t dimension_ = 0;
  std::size_t size_ = 0;
  Representation representation_ = Representation::kFloat;
  std::vector<std::uint64_t> numerators_;
  std::vector<std::uint64_t> denominators_;
  std::vector<double> values_;
  Provenance provenance_;
};

/// s generating matrices over F_b, each rows x cols. Row i produces the
/// output digit of weight b^-(i+1); column r multiplies index digit n_r
/// (n_0 least significant).
struct GeneratingMatrixSet {
  std::uint32_t base = 2;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Matrix> matrices;

  std::size_t dimension() const noexcept { return matrices.size(); }

  void validate() const {
    const PrimeField field(base);
    (void)field;
    for (const auto& c : matrices) {
      if (c.rows() != rows || c.cols() != cols) {
        throw std::invalid_argument("generating matrix has shape " + std::to_string(c.rows()) +
                                    "x" + std::to_string(c.cols()) + ", expected " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
      }
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < cols; ++k) {
          if (c(r, k) >= base) throw std::invalid_argument("generating matrix entry out of range");
        }
      }
    }
  }
};

inline std::uint64_t checked_power(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / b) throw std::overflow_error("b^m does not fit in 62 bits");
    r *= b;
  }
  return r;
}

/// Base-b digits of n, least significant first, padded to `count` digits.
inline std::vector<FieldElement> digits_of(std::uint64_t n, std::uint32_t b, std::size_t count) {
  std::vector<FieldElement> d(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    d[i] = static_cast<FieldElement>(n % b);
    n /= b;
  }
  if (n != 0) throw std::out_of_range("index has more base-b digits than available columns");
  return d;
}

/// Number of base-b digits needed for every n < limit (at least one).
inline std::size_t digit_count(std::uint64_t limit, std::uint64_t b) {
  std::size_t k = 1;
  std::uint64_t cap = b;
  while (cap < limit) {
    cap *= b;
    ++k;
  }
  return k;
}

/// Numerator of the radical inverse of n over `digits` base-b digits
/// (denominator b^digits).
inline std::uint64_t radical_inverse_numerator(std::uint64_t n, std::uint64_t b, std::size_t digits) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    out = out * b + n % b;
    n /= b;
  }
  return out;
}

/// x_n = ({n a_1 / N}, ..., {n a_s / N}), n = 0..N-1, exact with denominator N.
inline PointSet lattice_points(std::span<const std::int64_t> generator, std::uint64_t n_points) {
  if (n_points == 0) throw std::invalid_argument("lattice_points needs N >= 1");
  const std::size_t s = generator.size();
  const auto big_n = static_cast<std::int64_t>(n_points);
  std::vector<std::uint64_t> reduced(s);
  std::string gen_text;
  for (std::size_t j = 0; j < s; ++j) {
    reduced[j] = static_cast<std::uint64_t>(((generator[j] % big_n) + big_n) % big_n);
    if (j) gen_text += ',';
    gen_text += std::to_string(generator[j]);
  }
  std::vector<std::uint64_t> num(s * n_points);
  for (std::uint64_t n = 0; n < n_points; ++n) {
    for (std::size_t j = 0; j < s; ++j) {
      num[n * s + j] = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(n) * reduced[j] % n_points);
    }
  }
  return PointSet::exact(s, n_points, std::move(num), std::vector<std::uint64_t>(s, n_points),
                         {"lattice", {{"a", gen_text}, {"N", std::to_string(n_points)}}});
}

/// x_n = ({n alpha_1}, ..., {n alpha_s}) with each alpha held in 128-bit
/// fixed point, so n * alpha mod 1 is exact integer wraparound.
inline PointSet kronecker(std::span<const KroneckerAlpha> alphas, std::uint64_t n_points) {
  if (n_points == 0) throw std::invalid_argument("kronecker needs N >= 1");
  const std::size_t s = alphas.size();
  std::vector<double> values(s * n_points);
  std::string text;
  for (std::size_t j = 0; j < s; ++j) {
    if (j) text += ',';
    text += alphas[j].label;
  }
  for (std::uint64_t n = 0; n < n_points; ++n) {
    for (std::size_t j = 0; j < s; ++j) {
      values[n * s + j] = fixed_to_double(fractional_multiple(alphas[j].fraction, n));
    }
  }
  return PointSet::floating(s, n_points, std::move(values),
                            {"kronecker", {{"alpha", text}, {"N", std::to_string(n_points)}}});
}

/// Radical-inverse points x_n, n = start..start+N-1, one base per dimension.
inline PointSet halton(std::span<const std::uint64_t> bases, std::uint64_t n_points,
                       std::uint64_t start = 0, bool allow_non_coprime = false) {
  if (n_points == 0) throw std::invalid_argument("halton needs N >= 1");
  const std::size_t s = bases.size();
  std::string text;
  for (std::size_t j = 0; j < s; ++j) {
    if (bases[j] < 2) throw std::invalid_argument("halton bases must be >= 2");
    for (std::size_t k = 0; k < j && !allow_non_coprime; ++k) {
      if (std::gcd(bases[j], bases[k]) != 1) {
        throw std::invalid_argument("halton bases " + std::to_string(bases[k]) + " and " +
                                    std::to_string(bases[j]) + " are not coprime");
      }
    }
    if (j) text += ',';
    text += std::to_string(bases[j]);
  }
  const std::uint64_t last = start + n_points;
  std::vector<std::size_t> digits(s);
  std::vector<std::uint64_t> dens(s);
  for (std::size_t j = 0; j < s; ++j) {
    digits[j] = digit_count(last, bases[j]);
    dens[j] = checked_power(bases[j], digits[j]);
  }
  std::vector<std::uint64_t> num(s * n_points);
  for (std::uint64_t i = 0; i < n_points; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      num[i * s + j] = radical_inverse_numerator(start + i, bases[j], digits[j]);
    }
  }
  return PointSet::exact(s, n_points, std::move(num), std::move(dens),
                         {"halton",
                          {{"bases", text},
                           {"N", std::to_string(n_points)},
                           {"start", std::to_string(start)}}});
}

/// z_n = (x_n, y_n). The result is exact only if both inputs are.
inline PointSet hybrid(const PointSet& first, const PointSet& second) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("hybrid needs equal point counts, got " +
                                std::to_string(first.size()) + " and " +
                                std::to_string(second.size()));
  }
  const std::size_t n = first.size();
  const std::size_t s1 = first.dimension();
  const std::size_t s2 = second.dimension();
  const std::size_t s = s1 + s2;
  Provenance prov{"hybrid", {{"first", first.provenance().kind},
                             {"second", second.provenance().kind},
                             {"N", std::to_string(n)}}};
  if (first.is_exact() && second.is_exact()) {
    std::vector<std::uint64_t> num(n * s);
    std::vector<std::uint64_t> dens(first.denominators());
    dens.insert(dens.end(), second.denominators().begin(), second.denominators().end());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < s1; ++j) num[i * s + j] = first.numerator(i, j);
      for (std::size_t j = 0; j < s2; ++j) num[i * s + s1 + j] = second.numerator(i, j);
    }
    return PointSet::exact(s, n, std::move(num), std::move(dens), std::move(prov));
  }
  std::vector<double> values(n * s);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < s1; ++j) values[i * s + j] = first.value(i, j);
    for (std::size_t j = 0; j < s2; ++j) values[i * s + s1 + j] = second.value(i, j);
  }
  return PointSet::floating(s, n, std::move(values), std::move(prov));
}

/// Points n = start..start+count-1 of the digital sequence defined by G:
/// y = C_j (n_0, ..., n_{cols-1})^T over F_b and x_{n,j} = sum_i y_i b^-i.
inline PointSet digital_sequence(const GeneratingMatrixSet& g, std::uint64_t start,
                                 std::uint64_t count) {
  g.validate();
  const PrimeField F(g.base);
  const std::size_t s = g.dimension();
  const std::uint64_t den = checked_power(g.base, g.rows);
  std::vector<std::uint64_t> num(s * count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto digits = digits_of(start + i, g.base, g.cols);
    for (std::size_t j = 0; j < s; ++j) {
      const auto y = multiply(F, g.matrices[j], digits);
      std::uint64_t v = 0;
      for (auto d : y) v = v * g.base + d;
      num[i * s + j] = v;
    }
  }
  return PointSet::exact(s, count, std::move(num), std::vector<std::uint64_t>(s, den),
                         {"digital",
                          {{"b", std::to_string(g.base)},
                           {"rows", std::to_string(g.rows)},
                           {"cols", std::to_string(g.cols)},
                           {"s", std::to_string(s)},
                           {"start", std::to_string(start)}}});
}

/// The b^m-point digital net of square m x m generating matrices.
inline PointSet digital_net(const GeneratingMatrixSet& g) {
  if (g.rows != g.cols) {
    throw std::invalid_argument("digital_net expects m x m matrices, got " +
                                std::to_string(g.rows) + "x" + std::to_string(g.cols));
  }
  return digital_sequence(g, 0, checked_power(g.base, g.cols));
}

/// Generating matrices of the Niederreiter sequence in prime base b.
///
/// Dimension j uses the j-th monic irreducible p_j (degree e_j). Writing the
/// 1-based row index as i - 1 = Q e_j + u with 0 <= u < e_j, entry (i, r) is
/// the coefficient of x^(-r-1) in the expansion of x^u / p_j(x)^(Q+1).
inline GeneratingMatrixSet niederreiter_matrices(std::uint32_t b, std::size_t s, std::size_t rows,
                                                 std::size_t cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("niederreiter_matrices: empty shape");
  const PrimeField F(b);
  GeneratingMatrixSet g{b, rows, cols, {}};
  if (s == 0) return g;
  const auto irreducibles = monic_irreducibles(b, s);
  for (std::size_t j = 0; j < s; ++j) {
    const Poly& p = irreducibles[j];
    const auto e = static_cast<std::size_t>(p.degree());
    Matrix c(rows, cols, 0);
    Poly power = Poly::constant(F, 1);
    std::size_t power_exp = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      const std::size_t q_index = i / e;
      const std::size_t u = i % e;
      while (power_exp < q_index + 1) {
        power *= p;
        ++power_exp;
      }
      const auto series =
          laurent_expand(Poly::monomial(F, static_cast<int>(u)), power, -static_cast<int>(cols));
      for (std::size_t r = 0; r < cols; ++r) {
        c(i, r) = series.coefficient(-static_cast<int>(r) - 1);
      }
    }
    g.matrices.push_back(std::move(c));
  }
  return g;
}

/// Modulus f (deg m) and generators g_1..g_s (deg < m) over F_b.
struct PolyLatticeParams {
  Poly modulus;
  std::vector<Poly> generators;

  void validate() const {
    if (modulus.degree() < 1) throw std::invalid_argument("polynomial lattice modulus needs deg >= 1");
    for (const auto& g : generators) {
      modulus.check_same_field(g);
      if (g.degree() >= modulus.degree()) {
        throw std::invalid_argument("polynomial lattice generator degree must be < deg f");
      }
    }
  }
};

/// x_{n,j} = v_m(n(x) g_j(x) / f(x)), where n(x) carries the base-b digits
/// of n and v_m keeps the coefficients of x^-1..x^-m as digits b^-1..b^-m.
inline PointSet polynomial_lattice(const PolyLatticeParams& params) {
  params.validate();
  const PrimeField& F = params.modulus.field();
  const std::uint32_t b = F.modulus();
  const auto m = static_cast<std::size_t>(params.modulus.degree());
  const std::size_t s = params.generators.size();
  const std::uint64_t n_points = checked_power(b, m);
  std::vector<std::uint64_t> num(s * n_points);
  for (std::uint64_t n = 0; n < n_points; ++n) {
    const Poly n_poly(F, digits_of(n, b, m), false);
    for (std::size_t j = 0; j < s; ++j) {
      const Poly reduced = (n_poly * params.generators[j]) % params.modulus;
      const auto series = laurent_expand(reduced, params.modulus, -static_cast<int>(m));
      std::uint64_t v = 0;
      for (std::size_t k = 1; k <= m; ++k) v = v * b + series.coefficient(-static_cast<int>(k));
      num[n * s + j] = v;
    }
  }
  std::string gens;
  for (std::size_t j = 0; j < s; ++j) {
    if (j) gens += ';';
    gens += format_coefficients(params.generators[j]);
  }
  return PointSet::exact(s, n_points, std::move(num), std::vector<std::uint64_t>(s, n_points),
                         {"polylattice",
                          {{"b", std::to_string(b)},
                           {"f", format_coefficients(params.modulus)},
                           {"g", gens}}});
}

/// Generating matrices of a polynomial lattice: entry (i, r), i = 1..m, is
/// the coefficient of x^-i in x^r g_j(x) / f(x).
inline GeneratingMatrixSet polynomial_lattice_matrices(const PolyLatticeParams& params) {
  params.validate();
  const PrimeField& F = params.modulus.field();
  const auto m = static_cast<std::size_t>(params.modulus.degree());
  GeneratingMatrixSet g{F.modulus(), m, m, {}};
  for (const auto& gen : params.generators) {
    Matrix c(m, m, 0);
    for (std::size_t r = 0; r < m; ++r) {
      const auto series =
          laurent_expand(gen.shifted(static_cast<int>(r)), params.modulus, -static_cast<int>(m));
      for (std::size_t i = 1; i <= m; ++i) c(i - 1, r) = series.coefficient(-static_cast<int>(i));
    }
    g.matrices.push_back(std::move(c));
  }
  return g;
}

}  // namespace qmckit
