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
#include <numeric>

#include "qmckit/diophantine.hpp"
#include "qmckit/pointsets.hpp"
#include "qmckit/quality.hpp"

namespace qmckit {
namespace {

TEST(ContinuedFraction, SevenSixteenths) {
  const auto cf = continued_fraction(7, 16);
  EXPECT_EQ(cf.quotients, (std::vector<std::uint64_t>{2, 3, 2}));
  EXPECT_EQ(cf.max_quotient(), 3u);
}

TEST(ContinuedFraction, UnitFractions) {
  EXPECT_EQ(continued_fraction(1, 2).quotients, (std::vector<std::uint64_t>{2}));
  for (std::uint64_t n = 2; n < 50; ++n) EXPECT_EQ(continued_fraction(1, n).quotients, (std::vector<std::uint64_t>{n}));
}

TEST(ContinuedFraction, RejectsBadInput) {
  EXPECT_THROW(continued_fraction(0, 5), std::invalid_argument);
  EXPECT_THROW(continued_fraction(5, 5), std::invalid_argument);
  EXPECT_THROW(continued_fraction(4, 6), std::invalid_argument);
}

TEST(ContinuedFraction, AlternateFormEndsInOne) {
  const auto cf = continued_fraction(7, 16, true);
  EXPECT_EQ(cf.quotients, (std::vector<std::uint64_t>{2, 3, 1, 1}));
  EXPECT_EQ(fold_quotients(cf.quotients), (std::pair<std::uint64_t, std::uint64_t>{7, 16}));
}

TEST(ContinuedFractionProperty, FoldAndCanonicalForm) {
  for (std::uint64_t n = 2; n <= 400; ++n) {
    for (std::uint64_t a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      const auto cf = continued_fraction(a, n);
      ASSERT_EQ(fold_quotients(cf.quotients), (std::pair<std::uint64_t, std::uint64_t>{a, n}));
      if (cf.quotients.size() >= 2) {
        ASSERT_GE(cf.quotients.back(), 2u);
      }
      for (auto q : cf.quotients) ASSERT_GE(q, 1u);
      ASSERT_EQ(cf.max_quotient(), max_partial_quotient(a, n));
    }
  }
}

std::optional<std::uint64_t> smallest_witness_by_scan(std::uint64_t n, std::uint64_t c) {
  for (std::uint64_t a = 1; a < n; ++a) {
    if (std::gcd(a, n) == 1 && continued_fraction(a, n).max_quotient() <= c) return a;
  }
  return std::nullopt;
}

TEST(Zaremba, SixteenAndTwo) {
  const auto w = zaremba_search(16, 3);
  ASSERT_TRUE(w.has_value());
  EXPECT_LE(*w, 7u);
  EXPECT_EQ(w, smallest_witness_by_scan(16, 3));
  EXPECT_EQ(zaremba_search(2, 2), std::optional<std::uint64_t>(1));
}

TEST(Zaremba, AbsentWhenBoundTooSmall) {
  // c = 1 forces a/N = [0; 1], impossible for N >= 3.
  EXPECT_FALSE(zaremba_search(3, 1).has_value());
  EXPECT_THROW(zaremba_search(1, 3), std::invalid_argument);
  EXPECT_THROW(zaremba_search(5, 0), std::invalid_argument);
}

TEST(ZarembaProperty, SmallestWitnessMatchesScan) {
  for (std::uint64_t n = 2; n <= 600; ++n) {
    for (std::uint64_t c : {2, 3, 5}) ASSERT_EQ(zaremba_search(n, c), smallest_witness_by_scan(n, c)) << n << " " << c;
  }
}

TEST(ZarembaTable, PowersOfTwoWithThree) {
  const auto rows = zaremba_table(2, 20, 3);
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.witness.has_value()) << r.m;
    EXPECT_EQ(r.n, 1ULL << r.m);
    EXPECT_LE(max_partial_quotient(*r.witness, r.n), 3u);
    EXPECT_EQ(fold_quotients(r.quotients), (std::pair<std::uint64_t, std::uint64_t>{*r.witness, r.n}));
  }
}

TEST(ZarembaTable, PowersOfThreeAndFiveWithFive) {
  for (const auto& r : zaremba_table(3, 12, 5)) EXPECT_TRUE(r.witness.has_value()) << r.m;
  for (const auto& r : zaremba_table(5, 10, 5)) EXPECT_TRUE(r.witness.has_value()) << r.m;
  EXPECT_THROW(zaremba_table(1, 3, 5), std::invalid_argument);
  EXPECT_THROW(zaremba_table(2, 45, 3), std::overflow_error);
}

// N D*_N / log N for the Zaremba lattice {(n/N, {n a/N})} stays bounded and
// does not drift upwards as m grows.
TEST(ZarembaLattice, DiscrepancyRatioBounded) {
  std::vector<double> ratios;
  for (unsigned m = 4; m <= 16; ++m) {
    const std::uint64_t n = 1ULL << m;
    const auto a = zaremba_search(n, 3);
    ASSERT_TRUE(a.has_value());
    const std::int64_t gen[2] = {1, static_cast<std::int64_t>(*a)};
    const auto d = star_discrepancy(lattice_points(gen, n));
    ASSERT_TRUE(d.exact.has_value());
    ratios.push_back(d.value * static_cast<double>(n) / std::log(static_cast<double>(n)));
  }
  const double early = *std::max_element(ratios.begin(), ratios.begin() + 5);
  for (std::size_t i = 5; i < ratios.size(); ++i) EXPECT_LE(ratios[i], 1.25 * early) << "m=" << i + 4;
  for (double r : ratios) EXPECT_GT(r, 0.0);
}

}  // namespace
}  // namespace qmckit
