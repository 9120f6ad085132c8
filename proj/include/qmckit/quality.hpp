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
#include <cmath>
#include <limits>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmckit/algebra/linear_algebra.hpp"
#include "qmckit/pointsets.hpp"

namespace qmckit {

// ---------------------------------------------------------------------------
// (t, m, s)-net verification on exact coordinates
// ---------------------------------------------------------------------------

namespace detail {

/// floor(x * b^d) for every coordinate and d = 0..m, from exact
/// numerators: prefix[(n * s + j) * (m + 1) + d].
inline std::vector<std::uint64_t> digit_prefixes(const PointSet& p, std::uint64_t b, std::size_t m) {
  const std::size_t s = p.dimension();
  std::vector<std::uint64_t> out(p.size() * s * (m + 1));
  for (std::size_t n = 0; n < p.size(); ++n) {
    for (std::size_t j = 0; j < s; ++j) {
      const unsigned __int128 num = p.numerator(n, j);
      const unsigned __int128 den = p.denominator(j);
      unsigned __int128 scale = 1;
      for (std::size_t d = 0; d <= m; ++d) {
        out[(n * s + j) * (m + 1) + d] = static_cast<std::uint64_t>(num * scale / den);
        scale *= b;
      }
    }
  }
  return out;
}

/// Calls visit(d) for every vector d of s nonnegative parts summing to k,
/// each part at most cap. Returns false as soon as visit does.
template <typename Visit>
bool for_each_composition(std::size_t k, std::size_t s, std::size_t cap, Visit&& visit) {
  std::vector<std::size_t> d(s, 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) -> bool {
    if (j + 1 == s) {
      if (left > cap) return true;
      d[j] = left;
      return visit(d);
    }
    for (std::size_t v = 0; v <= std::min(left, cap); ++v) {
      d[j] = v;
      if (!rec(j + 1, left - v)) return false;
    }
    return true;
  };
  if (s == 0) return k == 0 ? visit(d) : true;
  return rec(0, k);
}

inline void require_net_input(const PointSet& p, std::uint64_t b, std::size_t m, std::size_t s) {
  if (!p.is_exact()) throw std::invalid_argument("net verification needs exact coordinates");
  if (p.dimension() != s) {
    throw std::invalid_argument("point set has dimension " + std::to_string(p.dimension()) +
                                ", expected " + std::to_string(s));
  }
  if (b < 2) throw std::invalid_argument("net verification needs b >= 2");
  if (p.size() != checked_power(b, m)) {
    throw std::invalid_argument("net verification needs N = b^m = " +
                                std::to_string(checked_power(b, m)) + " points, got " +
                                std::to_string(p.size()));
  }
}

inline bool net_property(const PointSet& p, std::uint64_t b, std::size_t m, std::size_t s,
                         std::size_t t, const std::vector<std::uint64_t>& prefixes) {
  if (t >= m) return true;
  const std::size_t k = m - t;
  const std::uint64_t expected = checked_power(b, t);
  std::vector<std::uint64_t> counts(checked_power(b, k));
  std::vector<std::uint64_t> powers(m + 1, 1);
  for (std::size_t d = 1; d <= m; ++d) powers[d] = powers[d - 1] * b;
  return for_each_composition(k, s, m, [&](const std::vector<std::size_t>& d) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t n = 0; n < p.size(); ++n) {
      std::uint64_t cell = 0;
      for (std::size_t j = 0; j < s; ++j) {
        cell = cell * powers[d[j]] + prefixes[(n * s + j) * (m + 1) + d[j]];
      }
      ++counts[cell];
    }
    return std::all_of(counts.begin(), counts.end(),
                       [expected](std::uint64_t c) { return c == expected; });
  });
}

}  // namespace detail

/// True iff every elementary interval of volume b^(t-m) holds exactly b^t points.
inline bool is_net(const PointSet& p, std::uint64_t b, std::size_t m, std::size_t s, std::size_t t) {
  detail::require_net_input(p, b, m, s);
  return detail::net_property(p, b, m, s, t, detail::digit_prefixes(p, b, m));
}

/// Smallest t in [0, m] for which the point set is a (t, m, s)-net in base b.
inline std::size_t minimal_t_geometric(const PointSet& p, std::uint64_t b, std::size_t m,
                                       std::size_t s) {
  detail::require_net_input(p, b, m, s);
  const auto prefixes = detail::digit_prefixes(p, b, m);
  for (std::size_t t = 0; t < m; ++t) {
    if (detail::net_property(p, b, m, s, t, prefixes)) return t;
  }
  return m;
}

/// True iff the net property at t also holds at every t' in [t, m].
/// Vacuously true when the property fails at t.
inline bool t_monotonicity_check(const PointSet& p, std::uint64_t b, std::size_t m, std::size_t s,
                                 std::size_t t) {
  detail::require_net_input(p, b, m, s);
  const auto prefixes = detail::digit_prefixes(p, b, m);
  if (!detail::net_property(p, b, m, s, t, prefixes)) return true;
  for (std::size_t u = t + 1; u <= m; ++u) {
    if (!detail::net_property(p, b, m, s, u, prefixes)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Duality: t from the minimum NRT weight of the dual space
// ---------------------------------------------------------------------------

/// NRT weight of one block: 0 for the zero block, else the largest 1-based
/// index with a nonzero entry (index 1 = most significant digit).
inline std::size_t nrt_block_weight(std::span<const FieldElement> block) {
  for (std::size_t i = block.size(); i > 0; --i) {
    if (block[i - 1] != 0) return i;
  }
  return 0;
}

inline std::size_t nrt_weight(std::span<const FieldElement> v, std::size_t s, std::size_t m) {
  std::size_t w = 0;
  for (std::size_t j = 0; j < s; ++j) w += nrt_block_weight(v.subspan(j * m, m));
  return w;
}

/// Dual of the row space {(C_1 u, ..., C_s u)} in F_b^(s m), grouped in s
/// blocks of m digit positions, with its minimum NRT weight.
struct DualSpace {
  std::uint32_t base = 2;
  std::size_t s = 0;
  std::size_t m = 0;
  std::vector<std::vector<FieldElement>> basis;
  /// Minimum NRT weight over nonzero dual vectors; m + 1 when the dual is {0}.
  std::size_t min_weight = 0;
};

inline DualSpace dual_space(const GeneratingMatrixSet& g) {
  g.validate();
  if (g.rows < g.cols) throw std::invalid_argument("dual space needs rows >= cols");
  const PrimeField F(g.base);
  const std::size_t m = g.cols;
  const std::size_t s = g.dimension();
  // a is dual iff sum_j (a^(j))^T C_j = 0, i.e. S^T a = 0 for the stacked S.
  Matrix stacked_t(m, s * m, 0);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t r = 0; r < m; ++r) stacked_t(r, j * m + i) = g.matrices[j](i, r);
    }
  }
  DualSpace dual{g.base, s, m, null_space(F, stacked_t), m + 1};
  const std::size_t dim = dual.basis.size();
  if (dim == 0) return dual;

  // A nonzero dual vector with block weights <= d_j exists iff the basis,
  // restricted to the coordinates outside that support, loses rank.
  for (std::size_t k = 1; k <= m; ++k) {
    const bool found = !detail::for_each_composition(k, s, m, [&](const std::vector<std::size_t>& d) {
      std::vector<std::size_t> outside;
      for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t i = d[j]; i < m; ++i) outside.push_back(j * m + i);
      }
      Matrix restricted(dim, outside.size(), 0);
      for (std::size_t v = 0; v < dim; ++v) {
        for (std::size_t c = 0; c < outside.size(); ++c) restricted(v, c) = dual.basis[v][outside[c]];
      }
      return rank(F, restricted) == dim;
    });
    if (found) {
      dual.min_weight = k;
      break;
    }
  }
  return dual;
}

/// t = m + 1 - delta, clamped to [0, m].
inline std::size_t minimal_t_dual(const GeneratingMatrixSet& g) {
  const DualSpace dual = dual_space(g);
  const auto m = static_cast<long long>(dual.m);
  const long long t = m + 1 - static_cast<long long>(dual.min_weight);
  return static_cast<std::size_t>(std::clamp(t, 0LL, m));
}

// ---------------------------------------------------------------------------
// Star discrepancy
// ---------------------------------------------------------------------------

/// Nonnegative rational num/den in lowest terms.
struct ExactRational {
  unsigned __int128 num = 0;
  unsigned __int128 den = 1;

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
  friend bool operator==(const ExactRational&, const ExactRational&) = default;
};

inline std::string to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline std::string to_string(const ExactRational& r) { return to_string(r.num) + "/" + to_string(r.den); }

inline ExactRational make_rational(unsigned __int128 num, unsigned __int128 den) {
  unsigned __int128 a = num, b = den;
  while (b != 0) {
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return {num / a, den / a};
}

struct StarDiscrepancy {
  double value = 0.0;
  std::optional<ExactRational> exact;
};

/// Point-count limits for the exact algorithms, per dimension.
inline constexpr std::size_t kExactDiscrepancyMaxPoints2D = 65536;
inline constexpr std::size_t kExactDiscrepancyMaxPoints3D = 512;
/// Limit for the general grid algorithm when s <= 2.
inline constexpr std::size_t kExactDiscrepancyMaxGrid2D = 8192;

namespace detail {

struct GridAxis {
  // Distinct coordinate values in increasing order; grid index K = size() is y = 1.
  std::vector<std::uint64_t> exact_values;
  std::vector<long double> values;
  std::vector<std::uint32_t> rank;  // per point
  std::uint64_t denominator = 1;
  bool padded = false;
  std::size_t k() const { return padded ? 1 : values.size(); }
};

inline GridAxis make_axis(const PointSet& p, std::size_t j) {
  GridAxis axis;
  const std::size_t n = p.size();
  axis.rank.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (p.is_exact()) {
    axis.denominator = p.denominator(j);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p.numerator(a, j) < p.numerator(b, j); });
    for (auto i : order) {
      const auto v = p.numerator(i, j);
      if (axis.exact_values.empty() || axis.exact_values.back() != v) {
        axis.exact_values.push_back(v);
        axis.values.push_back(static_cast<long double>(v) / static_cast<long double>(axis.denominator));
      }
      axis.rank[i] = static_cast<std::uint32_t>(axis.exact_values.size() - 1);
    }
  } else {
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p.value(a, j) < p.value(b, j); });
    for (auto i : order) {
      const long double v = p.value(i, j);
      if (axis.values.empty() || axis.values.back() != v) axis.values.push_back(v);
      axis.rank[i] = static_cast<std::uint32_t>(axis.values.size() - 1);
    }
  }
  return axis;
}

inline GridAxis padded_axis(std::size_t n) {
  GridAxis axis;
  axis.padded = true;
  axis.rank.assign(n, 0);
  return axis;
}

}  // namespace detail

namespace detail {

/// Column sweep over the critical x values for s = 2, by direct scans:
/// O(N K) time for K distinct y values. Num is an integer type wide enough
/// for N * den_x * den_y, or long double for float point sets.
template <class Num, class XAt, class YAt>
Num sweep_2d(const GridAxis& ax, const GridAxis& ay, std::size_t n, XAt x_at, YAt y_at, Num scale_count,
             Num scale_vol) {
  const std::size_t kx = ax.k();
  const std::size_t ky = ay.k();
  std::vector<std::uint32_t> start(kx + 2, 0);
  for (std::size_t i = 0; i < n; ++i) ++start[ax.rank[i] + 1];
  for (std::size_t g = 0; g <= kx; ++g) start[g + 1] += start[g];
  std::vector<std::uint32_t> by_column(n);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) by_column[fill[ax.rank[i]]++] = static_cast<std::uint32_t>(i);
  }
  std::vector<Num> y_vol(ky + 1);
  for (std::size_t g = 0; g <= ky; ++g) y_vol[g] = y_at(g) * scale_vol;
  std::vector<std::uint32_t> col(ky, 0);
  Num best = 0;
  for (std::size_t g1 = 0; g1 <= kx; ++g1) {
    const Num x = x_at(g1);
    // Open box [0, x) x [0, y_g2): x rank < g1 and y rank < g2.
    std::uint32_t a = 0;
    for (std::size_t g2 = 0; g2 <= ky; ++g2) {
      best = std::max(best, x * y_vol[g2] - static_cast<Num>(a) * scale_count);
      if (g2 < ky) a += col[g2];
    }
    if (g1 < kx) {
      for (std::uint32_t k = start[g1]; k < start[g1 + 1]; ++k) ++col[ay.rank[by_column[k]]];
    }
    // Closed box [0, x] x [0, y_g2]: x rank <= g1 and y rank <= g2.
    a = 0;
    for (std::size_t g2 = 0; g2 <= ky; ++g2) {
      if (g2 < ky) a += col[g2];
      best = std::max(best, static_cast<Num>(a) * scale_count - x * y_vol[g2]);
    }
  }
  return best;
}

/// max_g (slope[g] x + icpt[g]) under range updates of the intercepts.
/// Indices are cut into blocks of about sqrt(K); each block keeps its upper
/// hull and a lazy shift. Slopes must be nondecreasing in g and queries must
/// come with nondecreasing x, so every hull is walked by a forward pointer.
/// All values must stay below 2^62 in magnitude.
class BlockedEnvelope {
 public:
  BlockedEnvelope(std::vector<std::int64_t> slope, std::vector<std::int64_t> icpt)
      : slope_(std::move(slope)), icpt_(std::move(icpt)) {
    const std::size_t k = slope_.size();
    block_ = std::max<std::size_t>(8, static_cast<std::size_t>(std::sqrt(static_cast<double>(k))));
    const std::size_t blocks = (k + block_ - 1) / block_;
    lazy_.assign(blocks, 0);
    hulls_.resize(blocks);
    pointer_.assign(blocks, 0);
    for (std::size_t b = 0; b < blocks; ++b) rebuild(b);
  }

  /// icpt[g] += delta for lo <= g <= hi.
  void add(std::size_t lo, std::size_t hi, std::int64_t delta) {
    if (lo > hi) return;
    const std::size_t first = lo / block_;
    const std::size_t last = hi / block_;
    for (std::size_t b = first; b <= last; ++b) {
      const std::size_t begin = b * block_;
      const std::size_t end = std::min(begin + block_, slope_.size()) - 1;
      if (lo <= begin && end <= hi) {
        lazy_[b] += delta;
      } else {
        for (std::size_t g = std::max(lo, begin); g <= std::min(hi, end); ++g) icpt_[g] += delta;
        rebuild(b);
      }
    }
  }

  std::int64_t max_at(std::int64_t x) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::size_t b = 0; b < hulls_.size(); ++b) {
      const auto& h = hulls_[b];
      std::size_t& ptr = pointer_[b];
      while (ptr + 1 < h.size() && value(h[ptr + 1], x) >= value(h[ptr], x)) ++ptr;
      best = std::max(best, value(h[ptr], x) + lazy_[b]);
    }
    return best;
  }

 private:
  std::int64_t value(std::size_t g, std::int64_t x) const { return slope_[g] * x + icpt_[g]; }

  // Line j is redundant between i and k (slopes s_i < s_j < s_k) when the
  // i-k crossing is not below line j.
  bool redundant(std::size_t i, std::size_t j, std::size_t k) const {
    const auto lhs = static_cast<__int128>(icpt_[i] - icpt_[j]) * (slope_[k] - slope_[i]);
    const auto rhs = static_cast<__int128>(icpt_[i] - icpt_[k]) * (slope_[j] - slope_[i]);
    return lhs >= rhs;
  }

  void rebuild(std::size_t b) {
    auto& h = hulls_[b];
    h.clear();
    const std::size_t begin = b * block_;
    const std::size_t end = std::min(begin + block_, slope_.size());
    for (std::size_t g = begin; g < end; ++g) {
      if (!h.empty() && slope_[h.back()] == slope_[g]) {
        if (icpt_[h.back()] >= icpt_[g]) continue;
        h.pop_back();
      }
      while (h.size() >= 2 && redundant(h[h.size() - 2], h.back(), g)) h.pop_back();
      h.push_back(g);
    }
    pointer_[b] = 0;
  }

  std::vector<std::int64_t> slope_;
  std::vector<std::int64_t> icpt_;
  std::size_t block_ = 8;
  std::vector<std::int64_t> lazy_;
  std::vector<std::vector<std::size_t>> hulls_;
  std::vector<std::size_t> pointer_;
};

/// Exact column sweep with both scans answered by BlockedEnvelope:
/// O(N sqrt K) time. Requires N * den_x * den_y < 2^62.
inline std::int64_t sweep_2d_envelope(const GridAxis& ax, const GridAxis& ay, std::size_t n) {
  const std::size_t kx = ax.k();
  const std::size_t ky = ay.k();
  const auto scale = static_cast<std::int64_t>(ax.denominator * ay.denominator);
  auto x_at = [&](std::size_t g) {
    return static_cast<std::int64_t>(g < ax.exact_values.size() ? ax.exact_values[g] : ax.denominator);
  };
  std::vector<std::int64_t> y_vol(ky + 1);
  for (std::size_t g = 0; g <= ky; ++g) {
    y_vol[g] = static_cast<std::int64_t>(g < ay.exact_values.size() ? ay.exact_values[g] : ay.denominator) *
               static_cast<std::int64_t>(n);
  }
  std::vector<std::vector<std::uint32_t>> columns(kx);
  for (std::size_t i = 0; i < n; ++i) columns[ax.rank[i]].push_back(ay.rank[i]);

  // Open boxes: x * y_vol[g] - scale * #(passed, y rank < g).
  BlockedEnvelope open(y_vol, std::vector<std::int64_t>(ky + 1, 0));
  // Closed boxes, indexed by h = ky - g so slopes ascend:
  // scale * #(passed, y rank <= g) - x * y_vol[g].
  std::vector<std::int64_t> neg(ky + 1);
  for (std::size_t h = 0; h <= ky; ++h) neg[h] = -y_vol[ky - h];
  BlockedEnvelope closed(std::move(neg), std::vector<std::int64_t>(ky + 1, 0));

  std::int64_t best = 0;
  for (std::size_t g1 = 0; g1 <= kx; ++g1) {
    const std::int64_t x = x_at(g1);
    best = std::max(best, open.max_at(x));
    if (g1 < kx) {
      for (auto r : columns[g1]) {
        open.add(r + 1, ky, -scale);
        closed.add(0, ky - r, scale);
      }
    }
    best = std::max(best, closed.max_at(x));
  }
  return best;
}

}  // namespace detail

/// Exact D*_N for s = 2 by a column sweep over the distinct x values, with
/// O(N) memory. Exact point sets give an exact rational.
inline StarDiscrepancy star_discrepancy_2d(const PointSet& p) {
  const std::size_t n = p.size();
  if (p.dimension() != 2 || n == 0) throw std::invalid_argument("2D sweep needs a nonempty 2D point set");
  if (n > kExactDiscrepancyMaxPoints2D) {
    throw std::length_error("exact 2D star discrepancy limited to N <= " +
                            std::to_string(kExactDiscrepancyMaxPoints2D) +
                            "; use star_discrepancy_lower_bound for larger sets");
  }
  const auto ax = detail::make_axis(p, 0);
  const auto ay = detail::make_axis(p, 1);
  StarDiscrepancy out;
  if (p.is_exact()) {
    const auto dx = static_cast<unsigned __int128>(ax.denominator);
    const auto dy = static_cast<unsigned __int128>(ay.denominator);
    const unsigned __int128 total = dx * dy * n;
    auto finish = [&](auto best) {
      out.exact = make_rational(static_cast<unsigned __int128>(best), total);
      out.value = out.exact->to_double();
    };
    auto exact_at = [](const detail::GridAxis& a, std::size_t g) {
      return g < a.exact_values.size() ? a.exact_values[g] : a.denominator;
    };
    if (total < (static_cast<unsigned __int128>(1) << 62)) {
      finish(detail::sweep_2d_envelope(ax, ay, n));
      return out;
    }
    if (total < (static_cast<unsigned __int128>(1) << 120)) {
      using I = __int128;
      finish(detail::sweep_2d<I>(
          ax, ay, n, [&](std::size_t g) { return static_cast<I>(exact_at(ax, g)); },
          [&](std::size_t g) { return static_cast<I>(exact_at(ay, g)); }, static_cast<I>(dx * dy),
          static_cast<I>(n)));
      return out;
    }
  }
  auto value_at = [](const detail::GridAxis& a, std::size_t g) {
    return g < a.values.size() ? a.values[g] : 1.0L;
  };
  const long double best = detail::sweep_2d<long double>(
      ax, ay, n, [&](std::size_t g) { return value_at(ax, g); }, [&](std::size_t g) { return value_at(ay, g); },
      1.0L / static_cast<long double>(n), 1.0L);
  out.value = static_cast<double>(best);
  return out;
}

/// Exact D*_N by enumerating the critical grid prod_j ({x_nj} u {1}) and
/// taking max(vol - A_open/N, A_closed/N - vol) over all corners. s <= 3.
inline StarDiscrepancy star_discrepancy_grid(const PointSet& p) {
  const std::size_t s = p.dimension();
  const std::size_t n = p.size();
  if (n == 0 || s == 0) throw std::invalid_argument("star discrepancy of an empty point set");
  if (s > 3 || (s == 3 && n > kExactDiscrepancyMaxPoints3D) || (s <= 2 && n > kExactDiscrepancyMaxGrid2D)) {
    throw std::length_error("exact grid discrepancy limited to s <= 3 (N <= 512) or s <= 2 (N <= " +
                            std::to_string(kExactDiscrepancyMaxGrid2D) +
                            "); use star_discrepancy_lower_bound for larger sets");
  }
  std::vector<detail::GridAxis> axes;
  for (std::size_t j = 0; j < 3; ++j) {
    axes.push_back(j < s ? detail::make_axis(p, j) : detail::padded_axis(n));
  }
  const std::size_t k1 = axes[0].k(), k2 = axes[1].k(), k3 = axes[2].k();

  __int128 total_den = 1;
  for (const auto& a : axes) total_den *= static_cast<__int128>(a.denominator);
  const bool exact = p.is_exact() &&
                     total_den < (static_cast<__int128>(1) << 100) / static_cast<__int128>(n);

  auto grid_first = [&](const detail::GridAxis& a) -> std::size_t { return a.padded ? 1 : 0; };
  auto exact_at = [](const detail::GridAxis& a, std::size_t g) -> __int128 {
    if (a.padded) return 1;
    return g < a.exact_values.size() ? static_cast<__int128>(a.exact_values[g])
                                     : static_cast<__int128>(a.denominator);
  };
  auto value_at = [](const detail::GridAxis& a, std::size_t g) -> long double {
    if (a.padded) return 1.0L;
    return g < a.values.size() ? a.values[g] : 1.0L;
  };

  const std::size_t w = k3 + 1;
  std::vector<std::uint32_t> open((k2 + 1) * w), closed((k2 + 1) * w);
  __int128 best_exact = 0;
  long double best = 0.0L;
  const auto big_n = static_cast<__int128>(n);

  for (std::size_t g1 = grid_first(axes[0]); g1 <= k1; ++g1) {
    std::fill(open.begin(), open.end(), 0);
    std::fill(closed.begin(), closed.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r1 = axes[0].rank[i];
      const std::size_t cell = (axes[1].rank[i] + 1) * w + axes[2].rank[i] + 1;
      if (r1 < g1) ++open[cell];
      if (r1 <= g1) ++closed[cell];
    }
    // Inclusive 2D prefix sums: table[(a) * w + c] = #points with r2 < a, r3 < c.
    for (std::size_t a = 1; a <= k2; ++a) {
      for (std::size_t c = 1; c <= k3; ++c) {
        const std::size_t at = a * w + c;
        open[at] += open[at - w] + open[at - 1] - open[at - w - 1];
        closed[at] += closed[at - w] + closed[at - 1] - closed[at - w - 1];
      }
    }
    const __int128 y1 = exact_at(axes[0], g1);
    const long double v1 = value_at(axes[0], g1);
    for (std::size_t g2 = grid_first(axes[1]); g2 <= k2; ++g2) {
      const __int128 y12 = y1 * exact_at(axes[1], g2);
      const long double v12 = v1 * value_at(axes[1], g2);
      const std::size_t c2 = std::min(g2 + 1, k2);
      for (std::size_t g3 = grid_first(axes[2]); g3 <= k3; ++g3) {
        const std::uint32_t a_open = open[g2 * w + g3];
        const std::uint32_t a_closed = closed[c2 * w + std::min(g3 + 1, k3)];
        if (exact) {
          const __int128 vol = y12 * exact_at(axes[2], g3) * big_n;
          best_exact = std::max(best_exact, vol - static_cast<__int128>(a_open) * total_den);
          best_exact = std::max(best_exact, static_cast<__int128>(a_closed) * total_den - vol);
        } else {
          const long double vol = v12 * value_at(axes[2], g3);
          best = std::max(best, vol - static_cast<long double>(a_open) / n);
          best = std::max(best, static_cast<long double>(a_closed) / n - vol);
        }
      }
    }
  }
  StarDiscrepancy out;
  if (exact) {
    out.exact = make_rational(static_cast<unsigned __int128>(best_exact),
                              static_cast<unsigned __int128>(total_den * big_n));
    out.value = out.exact->to_double();
  } else {
    out.value = static_cast<double>(best);
  }
  return out;
}

/// D*_N = 1/(2N) + max_i |x_(i) - (2i-1)/(2N)| for a one-dimensional set.
inline StarDiscrepancy star_discrepancy_1d(const PointSet& p) {
  if (p.dimension() != 1 || p.size() == 0) {
    throw std::invalid_argument("closed-form discrepancy needs a nonempty 1D point set");
  }
  const std::size_t n = p.size();
  StarDiscrepancy out;
  if (p.is_exact()) {
    std::vector<std::uint64_t> xs(p.numerators());
    std::sort(xs.begin(), xs.end());
    const auto den = static_cast<__int128>(p.denominator(0));
    const auto two_n = static_cast<__int128>(2 * n);
    __int128 worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const __int128 diff = two_n * static_cast<__int128>(xs[i]) - static_cast<__int128>(2 * i + 1) * den;
      worst = std::max(worst, diff < 0 ? -diff : diff);
    }
    out.exact = make_rational(static_cast<unsigned __int128>(den + worst),
                              static_cast<unsigned __int128>(two_n * den));
    out.value = out.exact->to_double();
    return out;
  }
  std::vector<double> xs(p.values());
  std::sort(xs.begin(), xs.end());
  long double worst = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double target = (2.0L * i + 1.0L) / (2.0L * n);
    worst = std::max(worst, std::fabs(static_cast<long double>(xs[i]) - target));
  }
  out.value = static_cast<double>(1.0L / (2.0L * n) + worst);
  return out;
}

/// Exact star discrepancy: the closed form in one dimension, the column
/// sweep in two and the grid algorithm in three.
inline StarDiscrepancy star_discrepancy(const PointSet& p) {
  if (p.dimension() == 1) return star_discrepancy_1d(p);
  if (p.dimension() == 2) return star_discrepancy_2d(p);
  return star_discrepancy_grid(p);
}

/// |A([0,y))/N - vol([0,y))| for one anchored box.
inline double local_discrepancy(const PointSet& p, std::span<const double> y) {
  if (y.size() != p.dimension()) throw std::invalid_argument("box corner has wrong dimension");
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool inside = true;
    for (std::size_t j = 0; j < y.size() && inside; ++j) inside = p.value(i, j) < y[j];
    if (inside) ++count;
  }
  double vol = 1.0;
  for (double v : y) vol *= v;
  return std::fabs(static_cast<double>(count) / static_cast<double>(p.size()) - vol);
}

/// Lower bound on D*_N from uniformly sampled anchored boxes. Any dimension,
/// any size; never exceeds the true value.
inline double star_discrepancy_lower_bound(const PointSet& p, std::size_t samples,
                                           std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> y(p.dimension());
  double best = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    for (auto& v : y) v = unif(rng);
    best = std::max(best, local_discrepancy(p, y));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Lattice rules
// ---------------------------------------------------------------------------

/// Second Bernoulli polynomial x^2 - x + 1/6.
inline double bernoulli2(double x) { return x * x - x + 1.0 / 6.0; }

/// P_2 = -1 + (1/N) sum_n prod_j (1 + 2 pi^2 B_2({n a_j / N})), the worst-case
/// error of the rank-1 lattice rule for the alpha = 2 Fourier class with
/// weights r(h)^-2, r(h) = max(1, |h|).
inline double p_alpha(std::span<const std::int64_t> generator, std::uint64_t n_points, int alpha = 2) {
  if (alpha != 2) throw std::invalid_argument("p_alpha: only alpha = 2 is supported");
  if (n_points == 0) throw std::invalid_argument("p_alpha needs N >= 1");
  const auto big_n = static_cast<std::int64_t>(n_points);
  const double c = 2.0 * std::numbers::pi * std::numbers::pi;
  long double sum = 0.0L;
  for (std::int64_t n = 0; n < big_n; ++n) {
    long double prod = 1.0L;
    for (auto a : generator) {
      const std::int64_t r = static_cast<std::int64_t>(
          ((static_cast<__int128>(n) * a) % big_n + big_n) % big_n);
      prod *= 1.0L + c * bernoulli2(static_cast<double>(r) / static_cast<double>(big_n));
    }
    sum += prod;
  }
  return static_cast<double>(sum / static_cast<long double>(n_points) - 1.0L);
}

/// (1/N) sum_n exp(2 pi i n (a.h) / N) decided exactly: 1 iff a.h = 0 mod N.
inline int character_orthogonality(std::span<const std::int64_t> a, std::uint64_t n_points,
                                   std::span<const std::int64_t> h) {
  if (n_points == 0) throw std::invalid_argument("character_orthogonality needs N >= 1");
  if (a.size() != h.size()) throw std::invalid_argument("a and h must have equal length");
  const auto big_n = static_cast<__int128>(n_points);
  __int128 dot = 0;
  for (std::size_t j = 0; j < a.size(); ++j) dot = (dot + static_cast<__int128>(a[j]) * h[j]) % big_n;
  return dot == 0 ? 1 : 0;
}

/// The same character sum evaluated in floating point.
inline std::complex<double> character_sum(std::span<const std::int64_t> a, std::uint64_t n_points,
                                          std::span<const std::int64_t> h) {
  if (a.size() != h.size()) throw std::invalid_argument("a and h must have equal length");
  const auto big_n = static_cast<__int128>(n_points);
  __int128 dot = 0;
  for (std::size_t j = 0; j < a.size(); ++j) dot = (dot + static_cast<__int128>(a[j]) * h[j]) % big_n;
  if (dot < 0) dot += big_n;
  std::complex<double> sum = 0.0;
  for (std::uint64_t n = 0; n < n_points; ++n) {
    const auto phase = static_cast<double>((static_cast<__int128>(n) * dot) % big_n) /
                       static_cast<double>(n_points);
    sum += std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum / static_cast<double>(n_points);
}

// ---------------------------------------------------------------------------
// QMC integration
// ---------------------------------------------------------------------------

class NonFiniteIntegrand : public std::domain_error {
 public:
  explicit NonFiniteIntegrand(std::size_t node)
      : std::domain_error("integrand is not finite at node " + std::to_string(node)), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

using Integrand = std::function<double(std::span<const double>)>;

/// (1/N) sum_n f(x_n) with Neumaier-compensated summation.
inline double qmc_integrate(const Integrand& f, const PointSet& p) {
  if (p.size() == 0) throw std::invalid_argument("qmc_integrate needs at least one node");
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double v = f(p.point(n));
    if (!std::isfinite(v)) throw NonFiniteIntegrand(n);
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + comp) / static_cast<double>(p.size());
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// D*_N N / (b^t (log N)^(s-1)) with t from the geometric verifier.
inline double net_discrepancy_diagnostic(const PointSet& p, std::uint64_t b, std::size_t m,
                                         std::size_t s) {
  if (m < 2) throw std::invalid_argument("discrepancy diagnostic needs m >= 2");
  const std::size_t t = minimal_t_geometric(p, b, m, s);
  const double d_star = star_discrepancy(p).value;
  const double n = static_cast<double>(p.size());
  return d_star * n /
         (std::pow(static_cast<double>(b), static_cast<double>(t)) *
          std::pow(std::log(n), static_cast<double>(s) - 1.0));
}

struct QualityReport {
  std::size_t n = 0;
  std::size_t s = 0;
  std::optional<std::uint64_t> b;
  std::optional<std::size_t> m;
  std::optional<std::size_t> t_geometric;
  std::optional<std::size_t> t_dual;
  std::optional<StarDiscrepancy> star_discrepancy;
  std::optional<double> p2;
  /// N D*_N / (log N)^(s-1).
  std::optional<double> discrepancy_ratio;
};

/// Collects whatever measures apply to the point set: net t values when
/// (b, m) are given, the dual t when generating matrices are supplied, and
/// the exact discrepancy when it is within budget.
inline QualityReport assess(const PointSet& p, std::optional<std::uint64_t> b,
                            std::optional<std::size_t> m,
                            const GeneratingMatrixSet* matrices = nullptr) {
  QualityReport r;
  r.n = p.size();
  r.s = p.dimension();
  r.b = b;
  r.m = m;
  if (b && m && p.is_exact()) r.t_geometric = minimal_t_geometric(p, *b, *m, p.dimension());
  if (matrices != nullptr) r.t_dual = minimal_t_dual(*matrices);
  try {
    r.star_discrepancy = star_discrepancy(p);
  } catch (const std::length_error&) {
    // Over budget; the report simply omits it.
  }
  if (r.star_discrepancy && p.size() >= 3) {
    r.discrepancy_ratio = r.star_discrepancy->value * static_cast<double>(p.size()) /
                          std::pow(std::log(static_cast<double>(p.size())),
                                   static_cast<double>(p.dimension()) - 1.0);
  }
  return r;
}

}  // namespace qmckit
