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

#include <random>

#include "qmckit/factorizer.hpp"
#include "qmckit/oracles.hpp"

namespace qmckit {
namespace {

// f^q H^(q-1)(h/f) = H^(q-1)(f^q * h/f) because Hasse derivatives of order
// below q are linear over F_p[x^q]; this route needs no series at all.
Poly operator_by_identity(const Poly& f, const Poly& h, bool plus_sign = false) {
  const std::uint32_t q = f.modulus();
  const Poly main = hasse_derivative(h * pow(f, q - 1), q - 1);
  std::vector<FieldElement> frob;
  if (!h.is_zero()) {
    frob.assign(static_cast<std::size_t>(h.degree()) * q + 1, 0);
    for (std::size_t i = 0; i < h.coefficients().size(); ++i) frob[i * q] = h[i];
  }
  const Poly hq(f.field(), frob, false);
  return plus_sign ? main + hq : main - hq;
}

std::size_t kernel_dimension_by_enumeration(const Poly& f, bool plus_sign) {
  std::size_t zeros = 0;
  for (int d = -1; d < f.degree(); ++d) {
    if (d < 0) {
      ++zeros;  // h = 0
      continue;
    }
    for (const auto& h : monic_polynomials_of_degree(f.field(), d)) {
      if (operator_by_identity(f, h, plus_sign).is_zero()) ++zeros;
    }
  }
  // Monic representatives cover each nonzero line once: |kernel| = 1 + zeros_monic (p - 1).
  const std::uint64_t p = f.modulus();
  const std::uint64_t size = 1 + (zeros - 1) * (p - 1);
  std::size_t dim = 0;
  for (std::uint64_t v = 1; v < size; v *= p) ++dim;
  return dim;
}

std::size_t distinct_factor_count(const Poly& f) {
  auto factors = oracle::factor_by_trial_division(f);
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  return factors.size();
}

bool squarefree(const Poly& f) { return gcd(f, f.derivative()).is_one(); }

Poly random_monic(const PrimeField& F, std::mt19937_64& rng, int degree) {
  std::vector<FieldElement> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = static_cast<FieldElement>(rng() % F.modulus());
  c.back() = 1;
  return Poly(F, c);
}

TEST(Operator, ZeroMapsToZero) {
  const PrimeField F(3);
  EXPECT_TRUE(niederreiter_operator(Poly(F, {1, 0, 1, 1}), Poly(F)).is_zero());
}

TEST(Operator, RejectsBadInputs) {
  const PrimeField F(2);
  EXPECT_THROW(niederreiter_operator(Poly(F, {0, 1, 1}), Poly::constant(F, 1)), std::invalid_argument);
  const PrimeField F3(3);
  EXPECT_THROW(niederreiter_operator(Poly(F3, {1, 1, 2}), Poly::constant(F3, 1)), std::invalid_argument);
  EXPECT_THROW(niederreiter_operator(Poly(F3, {1, 1}), Poly(F3, {0, 1})), std::invalid_argument);
}

TEST(OperatorProperty, LinearInH) {
  std::mt19937_64 rng(41);
  for (std::uint64_t p : {2, 3, 5}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 40; ++trial) {
      Poly f = random_monic(F, rng, 1 + static_cast<int>(rng() % 8));
      if (f[0] == 0) f += Poly::constant(F, 1);
      const int d = f.degree();
      const Poly h1 = random_monic(F, rng, static_cast<int>(rng() % d)).scaled(static_cast<FieldElement>(rng() % p));
      const Poly h2 = random_monic(F, rng, static_cast<int>(rng() % d));
      const auto c = static_cast<FieldElement>(rng() % p);
      EXPECT_EQ(niederreiter_operator(f, h1 + h2.scaled(c)),
                niederreiter_operator(f, h1) + niederreiter_operator(f, h2).scaled(c));
    }
  }
}

TEST(OperatorProperty, SeriesRouteMatchesProductIdentity) {
  std::mt19937_64 rng(42);
  for (std::uint64_t p : {2, 3, 5}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 60; ++trial) {
      Poly f = random_monic(F, rng, 1 + static_cast<int>(rng() % 9));
      if (f[0] == 0) f += Poly::constant(F, 1);
      for (int k = 0; k < f.degree(); ++k) {
        const Poly h = Poly::monomial(F, k);
        EXPECT_EQ(niederreiter_operator(f, h), operator_by_identity(f, h)) << f.to_string();
      }
    }
  }
}

TEST(Kernel, VectorsSatisfyOperator) {
  const PrimeField F(3);
  const Poly f(F, {1, 0, 1, 0, 0, 0, 2, 0, 1});
  const auto basis = kernel_basis(f);
  EXPECT_EQ(basis.size(), 2u);
  for (const auto& h : basis) EXPECT_TRUE(niederreiter_operator(f, h).is_zero());
}

// Squarefree f with r distinct irreducible factors has an r-dimensional kernel.
TEST(KernelProperty, DimensionEqualsFactorCountOverF2) {
  const PrimeField F(2);
  for (int d = 1; d <= 8; ++d) {
    for (const auto& f : monic_polynomials_of_degree(F, d)) {
      if (f[0] == 0 || !squarefree(f)) continue;
      EXPECT_EQ(kernel_basis(f).size(), distinct_factor_count(f)) << f.to_string();
    }
  }
}

TEST(KernelProperty, DimensionEqualsFactorCountOverF3) {
  const PrimeField F(3);
  for (int d = 1; d <= 6; ++d) {
    for (const auto& f : monic_polynomials_of_degree(F, d)) {
      if (f[0] == 0 || !squarefree(f)) continue;
      EXPECT_EQ(kernel_basis(f).size(), distinct_factor_count(f)) << f.to_string();
    }
  }
}

TEST(Kernel, EnumerationAgreesWithGaussianElimination) {
  const PrimeField F(3);
  for (int d = 1; d <= 4; ++d) {
    for (const auto& f : monic_polynomials_of_degree(F, d)) {
      if (f[0] == 0 || !squarefree(f)) continue;
      EXPECT_EQ(kernel_basis(f).size(), kernel_dimension_by_enumeration(f, false)) << f.to_string();
    }
  }
}

// With "+ h^q" the logarithmic derivatives f g'/g are not solutions in odd
// characteristic, and the kernel no longer counts factors.
TEST(Kernel, PlusSignBreaksFactorCountInOddCharacteristic) {
  const PrimeField F(3);
  const Poly f = Poly(F, {1, 1}) * Poly(F, {2, 1});  // (x + 1)(x + 2)
  EXPECT_EQ(kernel_dimension_by_enumeration(f, false), 2u);
  EXPECT_EQ(kernel_dimension_by_enumeration(f, true), 0u);
}

// A kernel element sharing a proper factor with f exists iff f is reducible.
TEST(KernelProperty, SplittingElementExistsIffReducible) {
  for (std::uint64_t p : {2, 3}) {
    const PrimeField F(p);
    const int max_degree = p == 2 ? 8 : 5;
    for (int d = 2; d <= max_degree; ++d) {
      for (const auto& f : monic_polynomials_of_degree(F, d)) {
        if (f[0] == 0 || !squarefree(f)) continue;
        const auto basis = kernel_basis(f);
        bool splits = false;
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) combos *= p;
        for (std::uint64_t idx = 1; idx < combos && !splits; ++idx) {
          Poly h(F);
          std::uint64_t rest = idx;
          for (const auto& b : basis) {
            h += b.scaled(static_cast<FieldElement>(rest % p));
            rest /= p;
          }
          const int g = gcd(f, h).degree();
          splits = g > 0 && g < f.degree();
        }
        EXPECT_EQ(splits, !oracle::irreducible_by_trial_division(f)) << f.to_string();
      }
    }
  }
}

TEST(Kernel, SplitsCubeOfXPlusOneProduct) {
  const PrimeField F(2);
  const Poly f(F, {1, 0, 0, 1});  // (x + 1)(x^2 + x + 1)
  bool found = false;
  for (const auto& h : kernel_basis(f)) {
    const Poly g = gcd(f, h);
    found = found || g == Poly(F, {1, 1}) || g == Poly(F, {1, 1, 1});
  }
  EXPECT_TRUE(found);
}

TEST(Factor, SmallExamples) {
  const PrimeField F(2);
  const auto a = factor(Poly(F, {0, 1, 1}));
  ASSERT_EQ(a.factors.size(), 2u);
  EXPECT_EQ(a.factors[0].poly, Poly(F, {0, 1}));
  EXPECT_EQ(a.factors[1].poly, Poly(F, {1, 1}));
  const auto b = factor(Poly(F, {1, 0, 1}));
  ASSERT_EQ(b.factors.size(), 1u);
  EXPECT_EQ(b.factors[0].poly, Poly(F, {1, 1}));
  EXPECT_EQ(b.factors[0].multiplicity, 2u);
}

TEST(Factor, NonMonicInputKeepsContent) {
  const PrimeField F(5);
  const Poly f = Poly(F, {1, 1}) * Poly(F, {2, 0, 1}) * Poly(F, {0, 3});
  const auto r = factor(f);
  EXPECT_EQ(r.content, 3u);
  EXPECT_EQ(r.reassemble(), f);
}

TEST(Factor, PerfectPowers) {
  const PrimeField F(3);
  const Poly g(F, {1, 2, 0, 1});
  const Poly f = pow(g, 3) * pow(Poly(F, {1, 1}), 4);
  const auto r = factor(f);
  EXPECT_EQ(r.reassemble(), f);
  std::vector<Poly> multiset;
  for (const auto& fac : r.factors) {
    for (std::uint32_t i = 0; i < fac.multiplicity; ++i) multiset.push_back(fac.poly);
  }
  std::sort(multiset.begin(), multiset.end());
  EXPECT_EQ(multiset, oracle::factor_by_trial_division(f));
}

TEST(Factor, UnsupportedCharacteristic) {
  const PrimeField F(7);
  EXPECT_THROW(factor(Poly(F, {1, 1})), std::invalid_argument);
  EXPECT_THROW(factor(Poly::constant(PrimeField(2), 1)), std::invalid_argument);
}

TEST(FactorProperty, RandomPolynomialsMatchTrialDivision) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[trial % 3];
    const PrimeField F(p);
    const int d = 1 + static_cast<int>(rng() % (p == 5 ? 8 : 12));
    const Poly f = random_monic(F, rng, d).scaled(static_cast<FieldElement>(1 + rng() % (p - 1)));
    const auto r = factor(f);
    EXPECT_EQ(r.reassemble(), f);
    std::vector<Poly> multiset;
    for (const auto& fac : r.factors) {
      EXPECT_TRUE(fac.poly.is_monic());
      EXPECT_GE(fac.multiplicity, 1u);
      EXPECT_TRUE(oracle::irreducible_by_trial_division(fac.poly)) << fac.poly.to_string();
      for (std::uint32_t i = 0; i < fac.multiplicity; ++i) multiset.push_back(fac.poly);
    }
    std::sort(multiset.begin(), multiset.end());
    EXPECT_EQ(multiset, oracle::factor_by_trial_division(f)) << f.to_string();
    EXPECT_TRUE(std::is_sorted(r.factors.begin(), r.factors.end(),
                               [](const Factor& a, const Factor& b) { return a.poly < b.poly; }));
  }
}

TEST(FactorProperty, Deterministic) {
  const PrimeField F(2);
  const Poly f(F, {1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1});
  const auto a = factor(f);
  const auto b = factor(f);
  ASSERT_EQ(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    EXPECT_EQ(a.factors[i].poly, b.factors[i].poly);
    EXPECT_EQ(a.factors[i].multiplicity, b.factors[i].multiplicity);
  }
}

}  // namespace
}  // namespace qmckit
