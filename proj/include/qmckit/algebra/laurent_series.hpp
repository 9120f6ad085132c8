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

#include <stdexcept>
#include <string>
#include <vector>

#include "qmckit/algebra/polynomial.hpp"

namespace qmckit {

/// Truncated Laurent series at infinity, sum_e c_e x^e for
/// leading_exponent >= e >= truncation_order.
///
/// Coefficients are stored from the leading exponent downwards. Asking for
/// an exponent below the truncation order throws, so callers notice when the
/// expansion was not carried far enough.
class LaurentSeries {
 public:
  LaurentSeries(PrimeField field, int leading_exponent, int truncation_order,
                std::vector<FieldElement> coeffs)
      : field_(field),
        leading_exponent_(leading_exponent),
        truncation_order_(truncation_order),
        coeffs_(std::move(coeffs)) {
    if (leading_exponent_ >= truncation_order_ &&
        coeffs_.size() != static_cast<std::size_t>(leading_exponent_ - truncation_order_ + 1)) {
      throw std::invalid_argument("Laurent coefficient count does not match exponent range");
    }
  }

  const PrimeField& field() const noexcept { return field_; }
  int leading_exponent() const noexcept { return leading_exponent_; }
  int truncation_order() const noexcept { return truncation_order_; }
  const std::vector<FieldElement>& coefficients() const noexcept { return coeffs_; }

  /// Coefficient of x^exponent.
  FieldElement coefficient(int exponent) const {
    if (exponent < truncation_order_) {
      throw std::out_of_range("Laurent coefficient x^" + std::to_string(exponent) +
                              " lies below the truncation order " +
                              std::to_string(truncation_order_));
    }
    if (exponent > leading_exponent_) return 0;
    return coeffs_[static_cast<std::size_t>(leading_exponent_ - exponent)];
  }

 private:
  PrimeField field_;
  int leading_exponent_;
  int truncation_order_;
  std::vector<FieldElement> coeffs_;
};

/// Expansion of num/den in powers of 1/x, computed down to x^order.
///
/// Writing y = 1/x, num/den = x^(deg num - deg den) * rev(num)(y) / rev(den)(y)
/// where rev() reverses the coefficient vector; rev(den)(0) is the leading
/// coefficient of den, so the quotient is an ordinary power series in y.
inline LaurentSeries laurent_expand(const Poly& num, const Poly& den, int order) {
  num.check_same_field(den);
  if (den.is_zero()) throw std::domain_error("Laurent expansion with zero denominator");
  const PrimeField& F = den.field();
  if (num.is_zero()) {
    const int lead = order - 1;
    return LaurentSeries(F, lead, order, {});
  }
  const int lead = num.degree() - den.degree();
  if (lead < order) return LaurentSeries(F, order - 1, order, {});

  const std::size_t terms = static_cast<std::size_t>(lead - order + 1);
  const auto& nc = num.coefficients();
  const auto& dc = den.coefficients();
  const auto rev_at = [](const std::vector<FieldElement>& c, std::size_t k) -> FieldElement {
    return k < c.size() ? c[c.size() - 1 - k] : 0;
  };
  const FieldElement lead_inv = F.inv(den.leading());
  std::vector<FieldElement> out(terms, 0);
  for (std::size_t k = 0; k < terms; ++k) {
    FieldElement acc = rev_at(nc, k);
    const std::size_t upto = std::min(k, dc.size() - 1);
    for (std::size_t j = 1; j <= upto; ++j) {
      acc = F.sub(acc, F.mul(rev_at(dc, j), out[k - j]));
    }
    out[k] = F.mul(acc, lead_inv);
  }
  return LaurentSeries(F, lead, order, std::move(out));
}

}  // namespace qmckit
