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
#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cmath>
#include <random>

#include "qmckit/oracles.hpp"
#include "qmckit/pointsets.hpp"
#include "qmckit/quality.hpp"

namespace qmckit {
namespace {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256>>;

Matrix identity(std::size_t m) {
  Matrix c(m, m, 0);
  for (std::size_t i = 0; i < m; ++i) c(i, i) = 1;
  return c;
}

Poly random_poly(const PrimeField& F, std::mt19937_64& rng, int max_degree) {
  std::vector<FieldElement> c(static_cast<std::size_t>(max_degree) + 1);
  for (auto& v : c) v = static_cast<FieldElement>(rng() % F.modulus());
  return Poly(F, c);
}

// Radical inverse computed digit by digit in floating point, independent of
// the integer numerator path.
double radical_inverse(std::uint64_t n, std::uint64_t b) {
  double x = 0.0;
  double scale = 1.0 / static_cast<double>(b);
  while (n > 0) {
    x += static_cast<double>(n % b) * scale;
    n /= b;
    scale /= static_cast<double>(b);
  }
  return x;
}

TEST(Lattice, FourPointExample) {
  const std::vector<std::int64_t> a{1, 3};
  const auto p = lattice_points(a, 4);
  ASSERT_TRUE(p.is_exact());
  const std::vector<std::uint64_t> expected{0, 0, 1, 3, 2, 2, 3, 1};
  EXPECT_EQ(p.numerators(), expected);
  EXPECT_EQ(p.denominators(), (std::vector<std::uint64_t>{4, 4}));
}

TEST(Lattice, InvariantUnderGeneratorReduction) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t n = 2 + rng() % 200;
    std::vector<std::int64_t> a(3), shifted(3);
    for (std::size_t j = 0; j < 3; ++j) {
      a[j] = static_cast<std::int64_t>(rng() % n);
      const auto k = static_cast<std::int64_t>(rng() % 7) - 3;
      shifted[j] = a[j] + k * static_cast<std::int64_t>(n);
    }
    EXPECT_EQ(lattice_points(a, n).numerators(), lattice_points(shifted, n).numerators());
  }
}

TEST(Lattice, ZeroPointsThrows) {
  const std::vector<std::int64_t> a{1};
  EXPECT_THROW(lattice_points(a, 0), std::invalid_argument);
}

TEST(Kronecker, SmallExamples) {
  const std::vector<KroneckerAlpha> sqrt2{parse_alpha("sqrt(2)")};
  const auto p = kronecker(sqrt2, 2);
  EXPECT_EQ(p.value(0, 0), 0.0);
  EXPECT_NEAR(p.value(1, 0), std::sqrt(2.0) - 1.0, 1e-15);

  const std::vector<KroneckerAlpha> half{parse_alpha("0.5")};
  const auto h = kronecker(half, 3);
  EXPECT_EQ(h.value(0, 0), 0.0);
  EXPECT_EQ(h.value(1, 0), 0.5);
  EXPECT_EQ(h.value(2, 0), 0.0);
}

TEST(Kronecker, MatchesHighPrecisionReference) {
  const std::uint64_t n_points = std::uint64_t{1} << 20;
  const std::vector<std::uint64_t> radicands{2, 3, 5};
  std::vector<KroneckerAlpha> alphas;
  std::vector<Big> roots;
  for (auto d : radicands) {
    alphas.push_back(parse_alpha("sqrt(" + std::to_string(d) + ")"));
    roots.push_back(boost::multiprecision::sqrt(Big(d)));
  }
  const auto p = kronecker(alphas, n_points);
  std::mt19937_64 rng(5);
  const double tol = std::ldexp(1.0, -50);
  for (int k = 0; k < 3000; ++k) {
    const std::uint64_t n = k < 10 ? n_points - 1 - static_cast<std::uint64_t>(k) : rng() % n_points;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      const Big v = roots[j] * Big(n);
      const Big frac = v - boost::multiprecision::floor(v);
      EXPECT_LE(std::fabs(p.value(n, j) - static_cast<double>(frac)), tol) << "n=" << n << " j=" << j;
    }
  }
}

TEST(Kronecker, NegativeDecimalWrapsIntoUnitInterval) {
  const std::vector<KroneckerAlpha> a{parse_alpha("-0.25")};
  const auto p = kronecker(a, 3);
  EXPECT_EQ(p.value(1, 0), 0.75);
  EXPECT_EQ(p.value(2, 0), 0.5);
}

TEST(Kronecker, RejectsPerfectSquares) { EXPECT_THROW(parse_alpha("sqrt(9)"), std::invalid_argument); }

TEST(Halton, BaseTwoExamples) {
  const std::vector<std::uint64_t> b{2};
  const auto p = halton(b, 4);
  EXPECT_EQ(p.value(1, 0), 0.5);
  EXPECT_EQ(p.value(2, 0), 0.25);
  EXPECT_EQ(p.value(3, 0), 0.75);
}

TEST(Halton, BaseThreeIndexFive) {
  const std::vector<std::uint64_t> b{3};
  const auto p = halton(b, 1, 5);
  ASSERT_TRUE(p.is_exact());
  // 5 = 12_3, reversed 0.21_3 = 7/9.
  EXPECT_EQ(p.numerator(0, 0) * 9, 7 * p.denominator(0));
}

TEST(Halton, MatchesFloatingRadicalInverse) {
  const std::vector<std::uint64_t> b{2, 3, 5, 7};
  const auto p = halton(b, 1000, 17);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      EXPECT_NEAR(p.value(i, j), radical_inverse(17 + i, b[j]), 1e-12);
    }
  }
}

TEST(Halton, NonCoprimeBasesNeedOverride) {
  const std::vector<std::uint64_t> b{2, 4};
  EXPECT_THROW(halton(b, 8), std::invalid_argument);
  EXPECT_NO_THROW(halton(b, 8, 0, true));
}

TEST(Hybrid, EmptyFactorIsIdentity) {
  const std::vector<std::int64_t> a{1, 5};
  const auto p = lattice_points(a, 13);
  const auto empty = PointSet::exact(0, 13, {}, {}, {"empty", {}});
  const auto z = hybrid(p, empty);
  EXPECT_EQ(z.dimension(), 2u);
  EXPECT_EQ(z.numerators(), p.numerators());
  EXPECT_EQ(z.denominators(), p.denominators());
}

TEST(Hybrid, ConcatenatesCoordinates) {
  const std::vector<std::int64_t> a{1, 3};
  const std::vector<std::uint64_t> b{3};
  const auto p = lattice_points(a, 4);
  const auto h = halton(b, 4);
  const auto z = hybrid(p, h);
  ASSERT_EQ(z.dimension(), 3u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(z.value(i, 0), p.value(i, 0));
    EXPECT_EQ(z.value(i, 1), p.value(i, 1));
    EXPECT_EQ(z.value(i, 2), h.value(i, 0));
  }
  EXPECT_TRUE(z.is_exact());
}

TEST(Hybrid, MixedRepresentationFallsBackToFloat) {
  const std::vector<std::int64_t> a{1};
  const std::vector<KroneckerAlpha> al{parse_alpha("sqrt(2)")};
  const auto z = hybrid(lattice_points(a, 5), kronecker(al, 5));
  EXPECT_FALSE(z.is_exact());
  EXPECT_EQ(z.dimension(), 2u);
}

TEST(Hybrid, MismatchedSizesThrow) {
  const std::vector<std::int64_t> a{1};
  EXPECT_THROW(hybrid(lattice_points(a, 4), lattice_points(a, 5)), std::invalid_argument);
}

TEST(DigitalNet, IdentityGivesVanDerCorput) {
  const GeneratingMatrixSet g{2, 2, 2, {identity(2)}};
  const auto p = digital_net(g);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p.value(0, 0), 0.0);
  EXPECT_EQ(p.value(1, 0), 0.5);
  EXPECT_EQ(p.value(2, 0), 0.25);
  EXPECT_EQ(p.value(3, 0), 0.75);
}

TEST(DigitalNet, IdentityMatchesRadicalInverse) {
  for (std::uint32_t b : {2u, 3u, 5u}) {
    const std::size_t m = b == 2 ? 8 : 4;
    const GeneratingMatrixSet g{b, m, m, {identity(m)}};
    const auto p = digital_net(g);
    for (std::size_t n = 0; n < p.size(); ++n) EXPECT_NEAR(p.value(n, 0), radical_inverse(n, b), 1e-15);
  }
}

TEST(DigitalNet, ZeroMatrixHasWorstT) {
  const std::size_t m = 3;
  const GeneratingMatrixSet g{2, m, m, {identity(m), Matrix(m, m, 0)}};
  const auto p = digital_net(g);
  EXPECT_EQ(minimal_t_geometric(p, 2, m, 2), m);
  EXPECT_EQ(minimal_t_dual(g), m);
}

TEST(DigitalNet, RejectsBadShapes) {
  GeneratingMatrixSet g{2, 2, 3, {Matrix(2, 3, 0)}};
  EXPECT_THROW(digital_net(g), std::invalid_argument);
  GeneratingMatrixSet h{2, 2, 2, {Matrix(2, 2, 2)}};
  EXPECT_THROW(digital_net(h), std::invalid_argument);
}

TEST(DigitalSequence, PrefixesAgreeWithNet) {
  const auto g = niederreiter_matrices(3, 2, 4, 4);
  const auto net = digital_net(g);
  const auto seq = digital_sequence(g, 10, 30);
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(seq.value(i, j), net.value(10 + i, j));
  }
}

TEST(Niederreiter, BaseTwoFirstDimensionIsIdentity) {
  for (std::size_t m = 1; m <= 10; ++m) {
    const auto g = niederreiter_matrices(2, 1, m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t r = 0; r < m; ++r) EXPECT_EQ(g.matrices[0](i, r), i == r ? 1u : 0u);
    }
  }
}

TEST(Niederreiter, QualityParameterWithinDegreeBound) {
  for (std::uint32_t b : {2u, 3u, 5u}) {
    const auto irr = monic_irreducibles(b, 5);
    for (std::size_t s = 1; s <= 5; ++s) {
      std::size_t bound = 0;
      for (std::size_t j = 0; j < s; ++j) bound += static_cast<std::size_t>(irr[j].degree()) - 1;
      const std::size_t m_max = b == 2 ? 8 : (b == 3 ? 5 : 3);
      for (std::size_t m = 1; m <= m_max; ++m) {
        const auto g = niederreiter_matrices(b, s, m, m);
        const std::size_t t = minimal_t_dual(g);
        EXPECT_LE(t, std::min(bound, m)) << "b=" << b << " s=" << s << " m=" << m;
        if (checked_power(b, m) <= 729) {
          EXPECT_EQ(t, minimal_t_geometric(digital_net(g), b, m, s)) << "b=" << b << " s=" << s << " m=" << m;
        }
      }
    }
  }
}

// n(x) / x^m moves digit n_r to weight b^(r-m), so x_n = n / b^m: the
// radical-inverse point multiset, listed in natural rather than digit-reversed order.
TEST(PolynomialLattice, MonomialModulusGivesRadicalInverseMultiset) {
  for (std::uint32_t b : {2u, 3u}) {
    const PrimeField F(b);
    const int m = b == 2 ? 6 : 4;
    const PolyLatticeParams params{Poly::monomial(F, m), {Poly::constant(F, 1)}};
    const auto p = polynomial_lattice(params);
    std::vector<double> lattice, inverse;
    for (std::size_t n = 0; n < p.size(); ++n) {
      EXPECT_EQ(p.numerator(n, 0), n);
      lattice.push_back(p.value(n, 0));
      inverse.push_back(radical_inverse(n, b));
    }
    std::sort(lattice.begin(), lattice.end());
    std::sort(inverse.begin(), inverse.end());
    for (std::size_t n = 0; n < p.size(); ++n) EXPECT_NEAR(lattice[n], inverse[n], 1e-15);
  }
}

TEST(PolynomialLattice, EqualsDigitalNetOfItsMatrices) {
  std::mt19937_64 rng(23);
  for (std::uint32_t b : {2u, 3u}) {
    const PrimeField F(b);
    for (int trial = 0; trial < 20; ++trial) {
      const int m = 1 + static_cast<int>(rng() % 6);
      Poly f = random_poly(F, rng, m - 1) + Poly::monomial(F, m);
      std::vector<Poly> gens;
      const std::size_t s = 1 + rng() % 3;
      for (std::size_t j = 0; j < s; ++j) gens.push_back(random_poly(F, rng, m - 1));
      const PolyLatticeParams params{f, gens};
      const auto direct = polynomial_lattice(params);
      const auto via_net = digital_net(polynomial_lattice_matrices(params));
      EXPECT_EQ(direct.numerators(), via_net.numerators()) << "b=" << b << " f=" << format_coefficients(f);
      EXPECT_EQ(direct.denominators(), via_net.denominators());
    }
  }
}

TEST(PolynomialLattice, RejectsLargeGenerators) {
  const PrimeField F(2);
  const PolyLatticeParams params{Poly::monomial(F, 2), {Poly::monomial(F, 2)}};
  EXPECT_THROW(polynomial_lattice(params), std::invalid_argument);
}

TEST(PointSet, RejectsCoordinatesOutsideUnitInterval) {
  EXPECT_THROW(PointSet::floating(1, 1, {1.0}, {"test", {}}), std::invalid_argument);
  EXPECT_THROW(PointSet::exact(1, 1, {3}, {3}, {"test", {}}), std::invalid_argument);
}

}  // namespace
}  // namespace qmckit
