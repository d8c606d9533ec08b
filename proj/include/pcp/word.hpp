#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace pcp {

using BigInt = mpz_class;

/// Generator index. Generators are numbered 1..n throughout the library.
using Gen = int;

/// A block of |exp| consecutive copies of the letter g_gen^{sign(exp)}.
struct Run {
  Gen gen;
  BigInt exp;

  friend bool operator==(const Run& a, const Run& b) { return a.gen == b.gen && a.exp == b.exp; }
};

/// Element of the free monoid on g_1..g_n and their formal inverses, stored
/// run-length encoded.
///
/// Adjacent runs never carry the same letter (same generator with the same
/// sign); they are merged on insertion. Adjacent runs of the same generator
/// with opposite signs are kept apart: g_i g_i^-1 is a non-trivial word of the
/// monoid and its cancellation is a collection step.
class Word {
 public:
  Word() = default;

  static Word letter(Gen g, const BigInt& exp = 1);

  const std::vector<Run>& runs() const noexcept { return runs_; }
  bool empty() const noexcept { return runs_.empty(); }

  /// Total number of letters.
  BigInt length() const;

  void append(Gen g, const BigInt& exp);
  void append(const Word& other);

  /// Formal inverse: letters reversed and each inverted.
  Word inverse() const;

  friend Word operator*(Word lhs, const Word& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  std::vector<Run> runs_;
};

/// Exponent vector x_1..x_n of the word g_1^{x_1} ... g_n^{x_n}.
class NormalWord {
 public:
  NormalWord() = default;
  explicit NormalWord(int n) : exps_(static_cast<std::size_t>(n)) {}
  explicit NormalWord(std::vector<BigInt> exps) : exps_(std::move(exps)) {}

  int size() const noexcept { return static_cast<int>(exps_.size()); }
  const BigInt& operator[](Gen g) const { return exps_[static_cast<std::size_t>(g - 1)]; }
  BigInt& operator[](Gen g) { return exps_[static_cast<std::size_t>(g - 1)]; }
  const std::vector<BigInt>& exponents() const noexcept { return exps_; }

  bool is_identity() const;
  Word to_word() const;

  friend bool operator==(const NormalWord& a, const NormalWord& b) = default;

 private:
  std::vector<BigInt> exps_;
};

/// `g1*g2^-1*g3`, or `1` for the empty word.
std::string to_string(const Word& w);
std::string to_string(const NormalWord& w);

}  // namespace pcp
