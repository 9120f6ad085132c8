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

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmckit/algebra/prime_field.hpp"

namespace qmckit {

/// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, FieldElement fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<FieldElement> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

/// Reduces `m` in place to reduced row echelon form; returns the pivot
/// column of each nonzero row.
inline std::vector<std::size_t> row_reduce(const PrimeField& F, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(r, k));
    }
    const FieldElement inv = F.inv(m(r, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F.mul(m(r, k), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const FieldElement factor = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) = F.sub(m(i, k), F.mul(factor, m(r, k)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const PrimeField& F, Matrix m) { return row_reduce(F, m).size(); }

/// Basis of {v : m v = 0}; each basis vector has a 1 in one free column.
inline std::vector<std::vector<FieldElement>> null_space(const PrimeField& F, Matrix m) {
  const auto pivots = row_reduce(F, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<FieldElement> multiply(const PrimeField& F, const Matrix& m,
                                          const std::vector<FieldElement>& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<FieldElement> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += std::uint64_t{m(r, c)} * v[c] % F.modulus();
    out[r] = static_cast<FieldElement>(acc % F.modulus());
  }
  return out;
}

}  // namespace qmckit
