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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmckit/algebra/polynomial.hpp"

namespace qmckit {

/// Value table a -> f(a) for every a in F_q.
inline std::vector<FieldElement> evaluation_table(const Poly& f) {
  std::vector<FieldElement> table(f.modulus());
  for (FieldElement a = 0; a < f.modulus(); ++a) table[a] = f.eval(a);
  return table;
}

inline bool is_permutation_table(std::span<const FieldElement> table) {
  std::vector<bool> seen(table.size(), false);
  for (auto v : table) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// True iff f permutes F_q, decided by evaluating f everywhere.
inline bool is_permutation_poly(const Poly& f) {
  return is_permutation_table(evaluation_table(f));
}

/// f is a complete mapping when both f(X) and f(X) + X permute F_q.
inline bool is_complete_mapping(const Poly& f) {
  if (f.modulus() <= 2) throw std::invalid_argument("complete mappings need q > 2");
  auto table = evaluation_table(f);
  if (!is_permutation_table(table)) return false;
  const PrimeField& F = f.field();
  for (FieldElement a = 0; a < table.size(); ++a) table[a] = F.add(table[a], a);
  return is_permutation_table(table);
}

/// f_b(X) = X^((q+1)/2) + bX.
inline Poly fb_polynomial(const PrimeField& field, FieldElement b) {
  const std::uint32_t q = field.modulus();
  if (q % 2 == 0) throw std::invalid_argument("f_b needs an odd prime q");
  return Poly::monomial(field, static_cast<int>((q + 1) / 2)) + Poly::monomial(field, 1, b % q);
}

/// Closed-form test: f_b is a complete mapping iff b^2 - 1 and b^2 + 2b are
/// both squares of nonzero elements.
inline bool fb_criterion(FieldElement b, std::uint64_t q) {
  if (q % 2 == 0) throw std::invalid_argument("fb_criterion: q must be an odd prime");
  const PrimeField F(q);
  b %= F.modulus();
  const FieldElement b2 = F.mul(b, b);
  return F.is_nonzero_square(F.sub(b2, 1)) && F.is_nonzero_square(F.add(b2, F.add(b, b)));
}

struct FbSweep {
  std::uint32_t q = 0;
  std::size_t count = 0;
  /// Values of b (sorted) for which f_b is a complete mapping.
  std::vector<FieldElement> witnesses;
  /// Values of b where the closed-form criterion and the exhaustive check disagree.
  std::vector<FieldElement> mismatches;
};

inline FbSweep fb_sweep(std::uint64_t q) {
  if (q % 2 == 0) throw std::invalid_argument("fb_sweep: q must be an odd prime");
  const PrimeField F(q);
  FbSweep out;
  out.q = F.modulus();
  for (FieldElement b = 0; b < out.q; ++b) {
    const bool exhaustive = is_complete_mapping(fb_polynomial(F, b));
    if (exhaustive) out.witnesses.push_back(b);
    if (exhaustive != fb_criterion(b, q)) out.mismatches.push_back(b);
  }
  out.count = out.witnesses.size();
  return out;
}

/// Check-digit system over F_q defined by one permutation polynomial f and a
/// control symbol c: a word a_1..a_s is valid iff
/// sum_{i=0}^{s-1} f^(i)(a_{i+1}) = c, with f^(0) = id and f^(i) = f o f^(i-1).
class CheckDigitSystem {
 public:
  CheckDigitSystem(Poly f, FieldElement control, std::size_t length)
      : f_(std::move(f)), control_(control % f_.modulus()), length_(length) {
    if (length_ < 2) throw std::invalid_argument("check-digit words need length >= 2");
    const auto base = evaluation_table(f_);
    if (!is_permutation_table(base)) {
      throw std::invalid_argument("check-digit polynomial " + f_.to_string() +
                                  " is not a permutation of F_" + std::to_string(f_.modulus()));
    }
    const std::uint32_t q = f_.modulus();
    iterates_.assign(length_, std::vector<FieldElement>(q));
    for (FieldElement a = 0; a < q; ++a) iterates_[0][a] = a;
    for (std::size_t i = 1; i < length_; ++i) {
      for (FieldElement a = 0; a < q; ++a) iterates_[i][a] = base[iterates_[i - 1][a]];
    }
    inverse_last_.assign(q, 0);
    for (FieldElement a = 0; a < q; ++a) inverse_last_[iterates_.back()[a]] = a;
  }

  const Poly& polynomial() const noexcept { return f_; }
  const PrimeField& field() const noexcept { return f_.field(); }
  std::uint32_t q() const noexcept { return f_.modulus(); }
  FieldElement control() const noexcept { return control_; }
  std::size_t length() const noexcept { return length_; }

  /// Value table of f^(i).
  std::span<const FieldElement> iterate(std::size_t i) const { return iterates_.at(i); }

  /// The unique a_s completing `word` (length s-1) to a valid word.
  FieldElement check_digit(std::span<const FieldElement> word) const {
    if (word.size() + 1 != length_) {
      throw std::invalid_argument("check_digit expects " + std::to_string(length_ - 1) +
                                  " symbols, got " + std::to_string(word.size()));
    }
    const PrimeField& F = field();
    FieldElement sum = 0;
    for (std::size_t i = 0; i < word.size(); ++i) sum = F.add(sum, iterates_[i][checked(word[i])]);
    return inverse_last_[F.sub(control_, sum)];
  }

  bool validate(std::span<const FieldElement> word) const {
    if (word.size() != length_) {
      throw std::invalid_argument("validate expects " + std::to_string(length_) +
                                  " symbols, got " + std::to_string(word.size()));
    }
    const PrimeField& F = field();
    FieldElement sum = 0;
    for (std::size_t i = 0; i < word.size(); ++i) sum = F.add(sum, iterates_[i][checked(word[i])]);
    return sum == control_;
  }

 private:
  FieldElement checked(FieldElement a) const {
    if (a >= q()) {
      throw std::out_of_range("symbol " + std::to_string(a) + " outside F_" + std::to_string(q()));
    }
    return a;
  }

  Poly f_;
  FieldElement control_;
  std::size_t length_;
  std::vector<std::vector<FieldElement>> iterates_;
  std::vector<FieldElement> inverse_last_;
};

enum class ErrorClass { kSingle, kNeighborTransposition, kTwin };

inline const char* to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::kSingle: return "single";
    case ErrorClass::kNeighborTransposition: return "neighbor_transposition";
    case ErrorClass::kTwin: return "twin";
  }
  return "?";
}

/// An undetected error: applying it to `word` at `position` (0-based) turns
/// one valid word into a different valid word.
struct Counterexample {
  ErrorClass kind;
  std::size_t position;
  FieldElement a;
  FieldElement b;
  std::vector<FieldElement> word;
};

struct DetectionReport {
  bool detects_single = true;
  bool detects_neighbor_transposition = true;
  bool detects_twin = true;
  std::vector<Counterexample> counterexamples;
};

/// Applies the error to a copy of the word; the caller guarantees the error
/// is applicable at that position.
inline std::vector<FieldElement> apply_error(const Counterexample& e) {
  std::vector<FieldElement> w = e.word;
  switch (e.kind) {
    case ErrorClass::kSingle: w[e.position] = e.b; break;
    case ErrorClass::kNeighborTransposition: std::swap(w[e.position], w[e.position + 1]); break;
    case ErrorClass::kTwin:
      w[e.position] = e.b;
      w[e.position + 1] = e.b;
      break;
  }
  return w;
}

/// Work budget for detection_report, in word-perturbation checks.
inline constexpr std::uint64_t kDetectionBudget = 50'000'000;

/// Exhaustively applies every single error, neighbor transposition and twin
/// error to every valid word and records which classes always invalidate it.
/// At most `max_counterexamples` witnesses are kept per error class.
inline DetectionReport detection_report(const CheckDigitSystem& sys,
                                        std::size_t max_counterexamples = 4) {
  const std::uint64_t q = sys.q();
  const std::size_t s = sys.length();
  if (q > 31 || s > 6) {
    throw std::length_error("detection_report is exhaustive; use q <= 31 and s <= 6 (got q=" +
                            std::to_string(q) + ", s=" + std::to_string(s) + ")");
  }
  std::uint64_t words = 1;
  for (std::size_t i = 0; i + 1 < s; ++i) words *= q;
  const std::uint64_t work = words * s * q * 2;
  if (work > kDetectionBudget) {
    throw std::length_error("detection_report budget exceeded (" + std::to_string(work) +
                            " checks); reduce q or the word length");
  }

  DetectionReport report;
  std::size_t kept[3] = {0, 0, 0};
  auto record = [&](ErrorClass kind, std::size_t pos, FieldElement a, FieldElement b,
                    const std::vector<FieldElement>& w) {
    switch (kind) {
      case ErrorClass::kSingle: report.detects_single = false; break;
      case ErrorClass::kNeighborTransposition: report.detects_neighbor_transposition = false; break;
      case ErrorClass::kTwin: report.detects_twin = false; break;
    }
    auto& n = kept[static_cast<int>(kind)];
    if (n < max_counterexamples) {
      report.counterexamples.push_back({kind, pos, a, b, w});
      ++n;
    }
  };

  std::vector<FieldElement> word(s, 0);
  std::vector<FieldElement> mutated(s, 0);
  for (std::uint64_t idx = 0; idx < words; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i + 1 < s; ++i) {
      word[i] = static_cast<FieldElement>(rest % q);
      rest /= q;
    }
    word[s - 1] = sys.check_digit(std::span<const FieldElement>(word.data(), s - 1));

    for (std::size_t pos = 0; pos < s; ++pos) {
      const FieldElement a = word[pos];
      for (FieldElement b = 0; b < q; ++b) {
        if (b == a) continue;
        mutated = word;
        mutated[pos] = b;
        if (sys.validate(mutated)) record(ErrorClass::kSingle, pos, a, b, word);
      }
      if (pos + 1 < s) {
        const FieldElement next = word[pos + 1];
        if (a != next) {
          mutated = word;
          std::swap(mutated[pos], mutated[pos + 1]);
          if (sys.validate(mutated)) record(ErrorClass::kNeighborTransposition, pos, a, next, word);
        } else {
          for (FieldElement b = 0; b < q; ++b) {
            if (b == a) continue;
            mutated = word;
            mutated[pos] = b;
            mutated[pos + 1] = b;
            if (sys.validate(mutated)) record(ErrorClass::kTwin, pos, a, b, word);
          }
        }
      }
    }
  }
  return report;
}

struct IsbnCheck {
  bool valid = false;
  /// sum_{i=1}^{10} i * x_i over the integers.
  std::uint64_t weighted_sum = 0;
  std::vector<FieldElement> digits;
};

/// Parses an ISBN-10 (hyphens and spaces ignored, final 'X' = 10) and
/// evaluates its weighted checksum. Malformed input throws; a well-formed
/// code with a wrong checksum returns valid == false.
inline IsbnCheck isbn10_check(std::string_view code) {
  IsbnCheck out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const char ch = code[i];
    if (ch == '-' || ch == ' ') continue;
    if (ch >= '0' && ch <= '9') {
      out.digits.push_back(static_cast<FieldElement>(ch - '0'));
    } else if (ch == 'X' || ch == 'x') {
      out.digits.push_back(10);
      if (out.digits.size() != 10) {
        throw std::invalid_argument("ISBN-10: 'X' is only allowed as the check symbol");
      }
    } else {
      throw std::invalid_argument(std::string("ISBN-10: unexpected character '") + ch + "'");
    }
  }
  if (out.digits.size() != 10) {
    throw std::invalid_argument("ISBN-10 needs exactly 10 symbols, got " +
                                std::to_string(out.digits.size()));
  }
  for (std::size_t i = 0; i < 10; ++i) out.weighted_sum += (i + 1) * out.digits[i];
  out.valid = out.weighted_sum % 11 == 0;
  return out;
}

inline bool isbn10_validate(std::string_view code) { return isbn10_check(code).valid; }

/// The ISBN-10 condition recast as the single-permutation system over F_11
/// with f(X) = 2X, control 0 and word length 10.
inline CheckDigitSystem isbn10_system() {
  const PrimeField f11(11);
  return CheckDigitSystem(Poly::monomial(f11, 1, 2), 0, 10);
}

/// Reorders ISBN digits x_1..x_10 into a_i = x_{2^(i-1) mod 11}.
inline std::vector<FieldElement> isbn10_to_system_word(std::span<const FieldElement> digits) {
  if (digits.size() != 10) throw std::invalid_argument("ISBN-10 word needs 10 digits");
  std::vector<FieldElement> word(10);
  std::uint32_t index = 1;
  for (std::size_t i = 0; i < 10; ++i) {
    word[i] = digits[index - 1];
    index = (2 * index) % 11;
  }
  return word;
}

}  // namespace qmckit
