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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qmckit/algebra/prime_field.hpp"

namespace qmckit {

/// u_{n+1} = a * u_n^{-1} + b over F_q, with u_{n+1} = b whenever u_n = 0.
class InversiveGenerator {
 public:
  InversiveGenerator(std::uint64_t q, FieldElement a, FieldElement b, FieldElement u0)
      : field_(q), a_(a % field_.modulus()), b_(b % field_.modulus()), u0_(u0 % field_.modulus()) {
    if (a_ == 0) throw std::invalid_argument("inversive generator needs a != 0");
  }

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_.modulus(); }
  FieldElement a() const noexcept { return a_; }
  FieldElement b() const noexcept { return b_; }
  FieldElement u0() const noexcept { return u0_; }

  FieldElement next(FieldElement u) const {
    if (u == 0) return b_;
    return field_.add(field_.mul(a_, field_.inv(u)), b_);
  }

  /// u_0, ..., u_{n-1}.
  std::vector<FieldElement> sequence(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("sequence length must be >= 1");
    std::vector<FieldElement> out;
    out.reserve(n);
    FieldElement u = u0_;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(u);
      u = next(u);
    }
    return out;
  }

 private:
  PrimeField field_;
  FieldElement a_;
  FieldElement b_;
  FieldElement u0_;
};

inline std::vector<FieldElement> inversive_sequence(const InversiveGenerator& gen, std::size_t n) {
  return gen.sequence(n);
}

struct PeriodInfo {
  std::uint64_t preperiod = 0;
  /// Least period t >= 1 of the eventually periodic orbit.
  std::uint64_t period = 0;
};

/// Walks the orbit from u0 with a visited-index table of size q.
inline PeriodInfo least_period(const InversiveGenerator& gen) {
  constexpr std::uint64_t kUnseen = ~std::uint64_t{0};
  std::vector<std::uint64_t> first_seen(gen.q(), kUnseen);
  FieldElement u = gen.u0();
  for (std::uint64_t n = 0;; ++n) {
    if (first_seen[u] != kUnseen) return {first_seen[u], n - first_seen[u]};
    first_seen[u] = n;
    u = gen.next(u);
  }
}

/// Membership table of the s-th power residues {z^s : z in F_q}; 0 is
/// included (z = 0) unless `include_zero` is false.
inline std::vector<bool> power_residue_table(const PrimeField& F, std::uint64_t s,
                                             bool include_zero = true) {
  std::vector<bool> table(F.modulus(), false);
  for (FieldElement z = 1; z < F.modulus(); ++z) table[F.pow(z, s)] = true;
  table[0] = include_zero;
  return table;
}

struct ResidueStat {
  std::uint64_t s = 0;
  std::uint64_t n = 0;
  std::uint64_t count = 0;
  double deviation = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// 2.2 * N^(1/2) * q^(1/4).
inline double residue_bound(std::uint64_t n, std::uint64_t q) {
  return 2.2 * std::sqrt(static_cast<double>(n)) * std::pow(static_cast<double>(q), 0.25);
}

/// R_s(N) for each requested N: the number of s-th power residues among
/// u_0..u_{N-1}, compared against N/s with the bound 2.2 N^(1/2) q^(1/4).
inline std::vector<ResidueStat> residue_stats(const InversiveGenerator& gen, std::uint64_t s,
                                              std::span<const std::uint64_t> windows,
                                              bool include_zero = true) {
  const std::uint64_t q = gen.q();
  if (s == 0 || (q - 1) % s != 0) {
    throw std::invalid_argument("s=" + std::to_string(s) + " does not divide q-1=" +
                                std::to_string(q - 1));
  }
  const auto period = least_period(gen).period;
  std::uint64_t longest = 0;
  for (auto n : windows) {
    if (n == 0 || n > period) {
      throw std::invalid_argument("window N=" + std::to_string(n) +
                                  " outside [1, least period " + std::to_string(period) + "]");
    }
    longest = std::max(longest, n);
  }
  const auto residues = power_residue_table(gen.field(), s, include_zero);
  std::vector<std::uint64_t> prefix(longest + 1, 0);
  FieldElement u = gen.u0();
  for (std::uint64_t i = 0; i < longest; ++i) {
    prefix[i + 1] = prefix[i] + (residues[u] ? 1 : 0);
    u = gen.next(u);
  }
  std::vector<ResidueStat> out;
  out.reserve(windows.size());
  for (auto n : windows) {
    ResidueStat st;
    st.s = s;
    st.n = n;
    st.count = prefix[n];
    st.deviation = std::abs(static_cast<double>(st.count) -
                            static_cast<double>(n) / static_cast<double>(s));
    st.bound = residue_bound(n, q);
    st.satisfied = st.deviation < st.bound;
    out.push_back(st);
  }
  return out;
}

/// u_n / q in [0, 1).
inline std::vector<double> to_unit_interval(std::span<const FieldElement> seq, std::uint64_t q) {
  std::vector<double> out;
  out.reserve(seq.size());
  for (auto u : seq) out.push_back(static_cast<double>(u) / static_cast<double>(q));
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

struct AuditViolation {
  std::uint64_t q, a, b, u0, s, n;
  std::uint64_t count;
  double deviation;
  double bound;
};

struct AuditSummary {
  std::uint64_t q_max = 0;
  std::uint64_t parameter_sets = 0;
  std::uint64_t checks = 0;
  /// Parameter sets whose least period is below 4, reported but not excluded.
  std::uint64_t short_periods = 0;
  std::vector<AuditViolation> violations;
};

namespace detail {

inline AuditSummary audit_prime(std::uint64_t q, std::span<const FieldElement> b_values, FieldElement u0) {
  AuditSummary summary;
  const PrimeField F(q);
  const auto ds = divisors(q - 1);
  std::vector<std::vector<bool>> tables;
  for (auto s : ds) tables.push_back(power_residue_table(F, s));
  for (FieldElement a = 1; a < q; ++a) {
    for (auto b : b_values) {
      const InversiveGenerator gen(q, a, b % q, u0 % q);
      const auto t = least_period(gen).period;
      ++summary.parameter_sets;
      if (t < 4) ++summary.short_periods;
      const auto seq = gen.sequence(t);
      for (std::size_t k = 0; k < ds.size(); ++k) {
        std::uint64_t count = 0;
        for (std::uint64_t n = 1; n <= t; ++n) {
          if (tables[k][seq[n - 1]]) ++count;
          const double dev = std::abs(static_cast<double>(count) -
                                      static_cast<double>(n) / static_cast<double>(ds[k]));
          const double bound = residue_bound(n, q);
          ++summary.checks;
          if (!(dev < bound)) summary.violations.push_back({q, a, b, u0, ds[k], n, count, dev, bound});
        }
      }
    }
  }
  return summary;
}

}  // namespace detail

/// Checks |R_s(N) - N/s| < 2.2 N^(1/2) q^(1/4) for all primes q <= q_max,
/// a in [1, q), the given b values and u0, every s | q-1 and every
/// N <= least period. Primes are distributed over `threads` workers; the
/// result does not depend on the worker count.
inline AuditSummary inversive_audit(std::uint64_t q_max, std::span<const FieldElement> b_values,
                                    FieldElement u0 = 1, unsigned threads = 1) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    if (is_prime(q)) primes.push_back(q);
  }
  std::vector<AuditSummary> parts(primes.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) parts[i] = detail::audit_prime(primes[i], b_values, u0);
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(primes.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  AuditSummary summary;
  summary.q_max = q_max;
  for (auto& part : parts) {
    summary.parameter_sets += part.parameter_sets;
    summary.checks += part.checks;
    summary.short_periods += part.short_periods;
    summary.violations.insert(summary.violations.end(), part.violations.begin(), part.violations.end());
  }
  return summary;
}

}  // namespace qmckit
