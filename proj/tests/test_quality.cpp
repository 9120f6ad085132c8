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

#include <cmath>
#include <numbers>
#include <random>

#include "qmckit/oracles.hpp"
#include "qmckit/pointsets.hpp"
#include "qmckit/quality.hpp"

namespace qmckit {
namespace {

PointSet exact_1d(std::vector<std::uint64_t> num, std::uint64_t den) {
  const std::size_t n = num.size();
  return PointSet::exact(1, n, std::move(num), {den}, {"test", {}});
}

PointSet random_exact(std::mt19937_64& rng, std::size_t s, std::size_t n, std::uint64_t max_den) {
  std::vector<std::uint64_t> dens(s), num(s * n);
  for (auto& d : dens) d = 1 + rng() % max_den;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < s; ++j) num[i * s + j] = rng() % dens[j];
  }
  return PointSet::exact(s, n, std::move(num), std::move(dens), {"random", {}});
}

GeneratingMatrixSet random_matrices(std::mt19937_64& rng, std::uint32_t b, std::size_t s, std::size_t m) {
  GeneratingMatrixSet g{b, m, m, {}};
  for (std::size_t j = 0; j < s; ++j) {
    Matrix c(m, m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t r = 0; r < m; ++r) c(i, r) = static_cast<FieldElement>(rng() % b);
    }
    g.matrices.push_back(std::move(c));
  }
  return g;
}

// Brute force over every corner built from coordinate values and 1, counting
// points in the open and closed anchored boxes directly.
double discrepancy_by_corners(const PointSet& p) {
  const std::size_t s = p.dimension();
  std::vector<std::vector<long double>> grid(s);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < p.size(); ++i) grid[j].push_back(p.value(i, j));
    grid[j].push_back(1.0L);
  }
  std::vector<std::size_t> idx(s, 0);
  long double best = 0.0L;
  const auto n = static_cast<long double>(p.size());
  while (true) {
    long double vol = 1.0L;
    for (std::size_t j = 0; j < s; ++j) vol *= grid[j][idx[j]];
    std::size_t open = 0, closed = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      bool in_open = true, in_closed = true;
      for (std::size_t j = 0; j < s; ++j) {
        in_open = in_open && p.value(i, j) < grid[j][idx[j]];
        in_closed = in_closed && p.value(i, j) <= grid[j][idx[j]];
      }
      open += in_open;
      closed += in_closed;
    }
    best = std::max({best, vol - open / n, closed / n - vol});
    std::size_t j = 0;
    while (j < s && ++idx[j] == grid[j].size()) idx[j++] = 0;
    if (j == s) break;
  }
  return static_cast<double>(best);
}

PointSet niederreiter_net(std::uint32_t b, std::size_t s, std::size_t m) {
  return digital_net(niederreiter_matrices(b, s, m, m));
}

// Net verifier --------------------------------------------------------------

TEST(NetVerifier, VanDerCorputQuarterIsZeroNet) {
  const auto p = exact_1d({0, 2, 1, 3}, 4);
  EXPECT_TRUE(is_net(p, 2, 2, 1, 0));
  EXPECT_EQ(minimal_t_geometric(p, 2, 2, 1), 0u);
}

TEST(NetVerifier, RepeatedOriginHasTEqualM) {
  const auto p = PointSet::exact(2, 8, std::vector<std::uint64_t>(16, 0), {8, 8}, {"origin", {}});
  EXPECT_EQ(minimal_t_geometric(p, 2, 3, 2), 3u);
  EXPECT_TRUE(is_net(p, 2, 3, 2, 3));
}

TEST(NetVerifier, NiederreiterBaseTwoDimensionTwoIsZeroNet) {
  EXPECT_EQ(minimal_t_geometric(niederreiter_net(2, 2, 6), 2, 6, 2), 0u);
}

TEST(NetVerifier, ZeroNetsWhenAllIrreduciblesAreLinear) {
  for (std::uint32_t b : {2u, 3u, 5u}) {
    for (std::size_t s = 1; s <= b; ++s) {
      const std::size_t m = b == 2 ? 6 : 3;
      EXPECT_EQ(minimal_t_geometric(niederreiter_net(b, s, m), b, m, s), 0u) << "b=" << b << " s=" << s;
    }
  }
}

TEST(NetVerifier, MatchesIntervalEnumerationOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t b = trial % 2 == 0 ? 2 : 3;
    const std::size_t m = b == 2 ? 1 + rng() % 5 : 1 + rng() % 3;
    const std::size_t s = 1 + rng() % 3;
    const auto p = digital_net(random_matrices(rng, b, s, m));
    EXPECT_EQ(minimal_t_geometric(p, b, m, s), oracle::minimal_t_by_interval_enumeration(p, b, m));
  }
}

TEST(NetVerifier, NonDigitalSetsMatchOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = 1 + rng() % 2;
    const auto p = random_exact(rng, s, 8, 16);
    EXPECT_EQ(minimal_t_geometric(p, 2, 3, s), oracle::minimal_t_by_interval_enumeration(p, 2, 3));
  }
}

TEST(NetVerifier, PropertySetIsUpSet) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = 1 + rng() % 3;
    const std::size_t m = 2 + rng() % 4;
    const auto p = digital_net(random_matrices(rng, 2, s, m));
    const std::size_t t_min = minimal_t_geometric(p, 2, m, s);
    for (std::size_t t = 0; t <= m; ++t) {
      EXPECT_EQ(is_net(p, 2, m, s, t), t >= t_min);
      EXPECT_TRUE(t_monotonicity_check(p, 2, m, s, t));
    }
  }
}

TEST(NetVerifier, RejectsWrongPointCount) {
  const auto p = exact_1d({0, 1, 2}, 4);
  EXPECT_THROW(minimal_t_geometric(p, 2, 2, 1), std::invalid_argument);
}

TEST(NetVerifier, SequencePrefixBlocksAreNets) {
  const auto g = niederreiter_matrices(2, 3, 10, 10);
  const std::size_t m = 5;
  for (std::uint64_t k = 0; k < 3; ++k) {
    const auto block = digital_sequence(g, k * 32, 32);
    EXPECT_LE(minimal_t_geometric(block, 2, m, 3), 1u) << "k=" << k;
  }
}

// Duality ------------------------------------------------------------------

TEST(Duality, InvertibleSingleMatrixHasTrivialDual) {
  Matrix c(4, 4, 0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t r = i; r < 4; ++r) c(i, r) = 1;
  }
  const GeneratingMatrixSet g{2, 4, 4, {c}};
  EXPECT_TRUE(dual_space(g).basis.empty());
  EXPECT_EQ(minimal_t_dual(g), 0u);
}

TEST(Duality, AllZeroMatricesGiveTEqualM) {
  const GeneratingMatrixSet g{3, 3, 3, {Matrix(3, 3, 0), Matrix(3, 3, 0)}};
  const auto dual = dual_space(g);
  EXPECT_EQ(dual.basis.size(), 6u);
  EXPECT_EQ(dual.min_weight, 1u);
  EXPECT_EQ(minimal_t_dual(g), 3u);
}

TEST(Duality, DualVectorsAnnihilateRowSpace) {
  std::mt19937_64 rng(6);
  const PrimeField F(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_matrices(rng, 3, 3, 4);
    const auto dual = dual_space(g);
    for (const auto& a : dual.basis) {
      for (std::size_t r = 0; r < 4; ++r) {
        FieldElement acc = 0;
        for (std::size_t j = 0; j < 3; ++j) {
          for (std::size_t i = 0; i < 4; ++i) acc = F.add(acc, F.mul(a[j * 4 + i], g.matrices[j](i, r)));
        }
        EXPECT_EQ(acc, 0u);
      }
    }
  }
}

TEST(Duality, MinimumWeightMatchesEnumeration) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t b = trial % 2 == 0 ? 2 : 3;
    const std::size_t m = 1 + rng() % 3;
    const std::size_t s = 1 + rng() % 3;
    const auto g = random_matrices(rng, b, s, m);
    const auto dual = dual_space(g);
    EXPECT_EQ(dual.min_weight, oracle::min_nrt_weight_by_enumeration(dual.basis, b, s, m));
  }
}

TEST(Duality, DualTEqualsGeometricT) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 240; ++trial) {
    const std::uint32_t b = trial % 2 == 0 ? 2 : 3;
    const std::size_t m = 1 + rng() % 6;
    const std::size_t s = 1 + rng() % 3;
    const auto g = random_matrices(rng, b, s, m);
    EXPECT_EQ(minimal_t_dual(g), minimal_t_geometric(digital_net(g), b, m, s))
        << "b=" << b << " m=" << m << " s=" << s;
  }
}

TEST(Duality, NrtWeightUsesLastNonzeroIndex) {
  const std::vector<FieldElement> v{0, 1, 0, 0, 0, 0, 0, 1};
  EXPECT_EQ(nrt_weight(v, 2, 4), 2u + 4u);
  EXPECT_EQ(nrt_block_weight(std::vector<FieldElement>{0, 0, 0}), 0u);
}

// Star discrepancy ---------------------------------------------------------

TEST(StarDiscrepancy, SmallExamples) {
  const auto half = star_discrepancy(exact_1d({0, 1}, 2));
  ASSERT_TRUE(half.exact.has_value());
  EXPECT_EQ(to_string(*half.exact), "1/2");

  const auto origin = star_discrepancy(exact_1d({0}, 1));
  EXPECT_EQ(to_string(*origin.exact), "1/1");

  // Midpoints (2i-1)/(2N) attain the minimum 1/(2N).
  std::vector<std::uint64_t> mid;
  for (std::uint64_t i = 0; i < 10; ++i) mid.push_back(2 * i + 1);
  EXPECT_EQ(to_string(*star_discrepancy(exact_1d(mid, 20)).exact), "1/20");
}

TEST(StarDiscrepancy, GridEqualsClosedFormInOneDimension) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_exact(rng, 1, 1 + rng() % 60, 1 + rng() % 1000);
    const auto grid = star_discrepancy_grid(p);
    const auto closed = star_discrepancy_1d(p);
    ASSERT_TRUE(grid.exact && closed.exact);
    EXPECT_EQ(*grid.exact, *closed.exact);
  }
}

TEST(StarDiscrepancy, SweepEqualsGridInTwoDimensions) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 150; ++trial) {
    const auto p = random_exact(rng, 2, 1 + rng() % 120, 1 + rng() % 500);
    const auto grid = star_discrepancy_grid(p);
    const auto sweep = star_discrepancy_2d(p);
    ASSERT_TRUE(grid.exact && sweep.exact);
    EXPECT_EQ(*grid.exact, *sweep.exact);
  }
}

TEST(StarDiscrepancy, FloatSweepMatchesGrid) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    std::vector<double> v(2 * n);
    for (auto& x : v) x = unif(rng);
    const auto p = PointSet::floating(2, n, v, {"random", {}});
    EXPECT_NEAR(star_discrepancy_2d(p).value, star_discrepancy_grid(p).value, 1e-12);
  }
}

TEST(StarDiscrepancy, MatchesCornerBruteForce) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t s = 1 + trial % 3;
    const auto p = random_exact(rng, s, 1 + rng() % 14, 1 + rng() % 40);
    EXPECT_NEAR(star_discrepancy(p).value, discrepancy_by_corners(p), 1e-12) << "s=" << s;
  }
}

TEST(StarDiscrepancy, SampledBoxesNeverExceedExact) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t s = 1 + trial % 3;
    const auto p = random_exact(rng, s, 1 + rng() % 50, 1 + rng() % 100);
    EXPECT_LE(star_discrepancy_lower_bound(p, 2000, trial), star_discrepancy(p).value + 1e-12);
  }
}

TEST(StarDiscrepancy, LatticeInvariantUnderCoordinatePermutation) {
  const std::vector<std::int64_t> a{1, 5, 21};
  const std::vector<std::int64_t> b{21, 1, 5};
  EXPECT_EQ(*star_discrepancy(lattice_points(a, 89)).exact, *star_discrepancy(lattice_points(b, 89)).exact);
  const std::vector<std::int64_t> c{1, 34};
  const std::vector<std::int64_t> d{34, 1};
  EXPECT_EQ(*star_discrepancy(lattice_points(c, 89)).exact, *star_discrepancy(lattice_points(d, 89)).exact);
}

TEST(StarDiscrepancy, BudgetsAreEnforced) {
  const std::vector<std::int64_t> a{1, 3, 7};
  EXPECT_THROW(star_discrepancy(lattice_points(a, kExactDiscrepancyMaxPoints3D + 1)), std::length_error);
  const std::vector<std::int64_t> b{1, 3};
  EXPECT_THROW(star_discrepancy(lattice_points(b, kExactDiscrepancyMaxPoints2D + 1)), std::length_error);
  EXPECT_THROW(star_discrepancy_grid(lattice_points(b, kExactDiscrepancyMaxGrid2D + 1)), std::length_error);
  const std::vector<std::int64_t> four{1, 3, 5, 7};
  EXPECT_THROW(star_discrepancy(lattice_points(four, 8)), std::length_error);
}

TEST(StarDiscrepancy, LargeTwoDimensionalSetMatchesGrid) {
  const std::vector<std::int64_t> a{1, 3001};
  const auto p = lattice_points(a, 8192);
  EXPECT_EQ(*star_discrepancy_2d(p).exact, *star_discrepancy_grid(p).exact);
}

// Lattice rules ------------------------------------------------------------

TEST(P2, SinglePointIsPiSquaredOverThree) {
  const std::vector<std::int64_t> a{1};
  EXPECT_NEAR(p_alpha(a, 1), std::numbers::pi * std::numbers::pi / 3.0, 1e-12);
}

TEST(P2, AgreesWithTruncatedDualSum) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t s = trial % 3 == 2 ? 3 : 2;
    const std::uint64_t n = 2 + rng() % 100;
    std::vector<std::int64_t> a(s);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % n);
    const std::int64_t h = s == 3 ? 150 : 1000;
    const auto oracle_sum = oracle::p2_truncated_dual_sum(a, n, h);
    const double exact = p_alpha(a, n);
    EXPECT_GE(exact, 0.0);
    EXPECT_GE(exact - oracle_sum.sum, -1e-9);
    EXPECT_LE(exact - oracle_sum.sum, oracle_sum.tail_bound);
  }
}

TEST(P2, FibonacciRulesImprove) {
  std::vector<std::uint64_t> fib{1, 1};
  while (fib.size() < 17) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  double previous = INFINITY;
  for (std::size_t k = 8; k <= 16; ++k) {
    const std::vector<std::int64_t> a{1, static_cast<std::int64_t>(fib[k - 2])};
    const double v = p_alpha(a, fib[k - 1]);
    EXPECT_LT(v, previous) << "k=" << k;
    previous = v;
  }
}

TEST(P2, OnlyAlphaTwo) {
  const std::vector<std::int64_t> a{1};
  EXPECT_THROW(p_alpha(a, 5, 4), std::invalid_argument);
}

TEST(Characters, Examples) {
  const std::vector<std::int64_t> a{1, 3};
  EXPECT_EQ(character_orthogonality(a, 4, std::vector<std::int64_t>{0, 0}), 1);
  EXPECT_EQ(character_orthogonality(a, 4, std::vector<std::int64_t>{1, 1}), 1);
  EXPECT_EQ(character_orthogonality(a, 4, std::vector<std::int64_t>{1, 0}), 0);
  EXPECT_LT(std::abs(character_sum(a, 4, std::vector<std::int64_t>{1, 0})), 1e-10);
}

TEST(Characters, IntegerTestEqualsRoundedSum) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t n = 1 + rng() % 64;
    std::vector<std::int64_t> a(2), h(2);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 100) - 50;
    for (auto& x : h) x = static_cast<std::int64_t>(rng() % 40) - 20;
    const auto sum = character_sum(a, n, h);
    EXPECT_EQ(character_orthogonality(a, n, h), static_cast<int>(std::lround(sum.real())));
    EXPECT_NEAR(sum.imag(), 0.0, 1e-9);
  }
}

// Integration --------------------------------------------------------------

TEST(Integrate, ConstantIsExact) {
  const std::vector<std::int64_t> a{1, 7};
  EXPECT_DOUBLE_EQ(qmc_integrate([](std::span<const double>) { return 1.0; }, lattice_points(a, 31)), 1.0);
}

TEST(Integrate, ProductErrorDecaysAlongNets) {
  auto f = [](std::span<const double> x) { return 4.0 * x[0] * x[1]; };
  double worst_scaled = 0.0;
  double previous = INFINITY;
  for (std::size_t m = 4; m <= 12; ++m) {
    const auto p = niederreiter_net(2, 2, m);
    const double err = std::fabs(qmc_integrate(f, p) - 1.0);
    const double n = static_cast<double>(p.size());
    EXPECT_LE(err, previous) << "m=" << m;
    previous = err;
    worst_scaled = std::max(worst_scaled, n * err / std::log(n));
  }
  EXPECT_LT(worst_scaled, 10.0);
}

TEST(Integrate, IndicatorErrorBoundedByDiscrepancy) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto p = niederreiter_net(2, 2, 7);
  const double d = star_discrepancy(p).value;
  for (int trial = 0; trial < 200; ++trial) {
    const double y0 = unif(rng), y1 = unif(rng);
    auto box = [=](std::span<const double> x) { return x[0] < y0 && x[1] < y1 ? 1.0 : 0.0; };
    EXPECT_LE(std::fabs(qmc_integrate(box, p) - y0 * y1), d + 1e-12);
  }
}

TEST(Integrate, NonFiniteValueReportsNode) {
  const std::vector<std::int64_t> a{1};
  const auto p = lattice_points(a, 4);
  try {
    qmc_integrate([](std::span<const double> x) { return 1.0 / x[0]; }, p);
    FAIL() << "expected NonFiniteIntegrand";
  } catch (const NonFiniteIntegrand& e) {
    EXPECT_EQ(e.node(), 0u);
  }
}

// Reports ------------------------------------------------------------------

TEST(Diagnostic, NiederreiterRatioStaysBounded) {
  double lo = INFINITY, hi = 0.0;
  for (std::size_t m = 4; m <= 9; ++m) {
    const double r = net_discrepancy_diagnostic(niederreiter_net(2, 2, m), 2, m, 2);
    EXPECT_TRUE(std::isfinite(r));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_LT(hi / lo, 3.0);
}

TEST(Diagnostic, GuardsAndDegenerateNet) {
  EXPECT_THROW(net_discrepancy_diagnostic(niederreiter_net(2, 2, 1), 2, 1, 2), std::invalid_argument);
  const auto zero = PointSet::exact(2, 16, std::vector<std::uint64_t>(32, 0), {16, 16}, {"origin", {}});
  EXPECT_TRUE(std::isfinite(net_discrepancy_diagnostic(zero, 2, 4, 2)));
}

TEST(Assess, CollectsApplicableMeasures) {
  const auto g = niederreiter_matrices(2, 2, 5, 5);
  const auto p = digital_net(g);
  const auto r = assess(p, 2, 5, &g);
  EXPECT_EQ(r.n, 32u);
  EXPECT_EQ(r.t_geometric, 0u);
  EXPECT_EQ(r.t_dual, 0u);
  ASSERT_TRUE(r.star_discrepancy.has_value());
  EXPECT_TRUE(r.discrepancy_ratio.has_value());

  const std::vector<std::int64_t> a{1, 3, 5};
  const auto big = assess(lattice_points(a, 1024), std::nullopt, std::nullopt);
  EXPECT_FALSE(big.star_discrepancy.has_value());
  EXPECT_FALSE(big.t_geometric.has_value());
}

}  // namespace
}  // namespace qmckit
