#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcp/word.hpp"

namespace pcp {

inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;

/// A relative order r_i: a positive integer or infinity.
class RelativeOrder {
 public:
  /// Infinity.
  RelativeOrder() = default;
  /// Throws ExponentOutOfRange unless value >= 1.
  explicit RelativeOrder(BigInt value);

  static RelativeOrder infinity() { return {}; }

  bool is_finite() const noexcept { return value_.has_value(); }
  bool is_infinite() const noexcept { return !value_.has_value(); }
  /// Precondition: is_finite().
  const BigInt& value() const { return *value_; }

  friend bool operator==(const RelativeOrder&, const RelativeOrder&) = default;

 private:
  std::optional<BigInt> value_;
};

std::string to_string(const RelativeOrder& r);

/// Right-hand side g_start^{x_start} ... g_n^{x_n} of a relation; indices
/// below `start` are implicitly zero.
class ExponentTail {
 public:
  ExponentTail() = default;
  ExponentTail(Gen start, std::vector<BigInt> exps) : start_(start), exps_(std::move(exps)) {}

  Gen start() const noexcept { return start_; }
  /// Exponent of g_k; zero outside the stored range.
  BigInt at(Gen k) const;
  const std::vector<BigInt>& exponents() const noexcept { return exps_; }

  bool is_trivial() const;
  Word to_word() const;

  friend bool operator==(const ExponentTail& a, const ExponentTail& b);

 private:
  Gen start_ = 1;
  std::vector<BigInt> exps_;
};

struct TailFactor {
  Gen gen;
  BigInt exp;

  friend bool operator==(const TailFactor&, const TailFactor&) = default;
};
using FactorList = std::vector<TailFactor>;

/// Unvalidated presentation data as it comes out of a parser or generator.
/// Keys of the relation maps are (i, j) with i < j: `conj[(i,j)]` is the tail
/// of g_j g_i = g_i * tail and `conjinv[(i,j)]` of g_j g_i^-1 = g_i^-1 * tail.
struct RawGroupPresentation {
  int n = 0;
  std::vector<RelativeOrder> orders;  // size n; missing entries mean infinity
  std::map<Gen, FactorList> power;
  std::map<std::pair<Gen, Gen>, FactorList> conj;
  std::map<std::pair<Gen, Gen>, FactorList> conjinv;
};

/// Tails of the inverse relations derived from the defining ones:
///   c(i,j): g_j^-1 g_i    = g_i    g^{c_ij}   (r_j infinite)
///   d(i,j): g_j^-1 g_i^-1 = g_i^-1 g^{d_ij}   (r_i, r_j infinite)
///   f(i):   g_i^-1        = g_i^{r_i-1} g^{f_i}   (r_i finite)
struct DerivedTables {
  std::map<std::pair<Gen, Gen>, ExponentTail> c;
  std::map<std::pair<Gen, Gen>, ExponentTail> d;
  std::map<Gen, ExponentTail> f;

  friend bool operator==(const DerivedTables&, const DerivedTables&) = default;
};

struct WeightAssignment {
  std::vector<long> weights;  // weights[g-1] = w(g)
  long d = 0;

  long operator()(Gen g) const { return weights[static_cast<std::size_t>(g - 1)]; }
  friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;
};

/// A validated polycyclic presentation. Immutable once built; the only ways to
/// obtain one are `validate` and `with_derived`.
class GroupPresentation {
 public:
  int size() const noexcept { return n_; }
  const RelativeOrder& order(Gen i) const { return orders_[idx(i)]; }

  /// e-tail; null when r_i is infinite.
  const ExponentTail* power_tail(Gen i) const { return opt(power_[idx(i)]); }
  /// a-tail for i < j.
  const ExponentTail& conj_tail(Gen i, Gen j) const { return *conj_[pair(i, j)]; }
  /// b-tail for i < j; null when r_i is finite.
  const ExponentTail* conjinv_tail(Gen i, Gen j) const { return opt(conjinv_[pair(i, j)]); }

  const ExponentTail* c_tail(Gen i, Gen j) const { return opt(c_[pair(i, j)]); }
  const ExponentTail* d_tail(Gen i, Gen j) const { return opt(d_[pair(i, j)]); }
  const ExponentTail* f_tail(Gen i) const { return opt(f_[idx(i)]); }

  bool has_derived() const noexcept { return derived_complete_; }
  DerivedTables derived() const;

  // Right-hand-side words cached for the collector (without the leading g_i^{+-1}).
  const Word* power_word(Gen i) const { return word_or_null(power_, power_w_, idx(i)); }
  const Word& conj_word(Gen i, Gen j) const { return conj_w_[pair(i, j)]; }
  const Word* conjinv_word(Gen i, Gen j) const { return word_or_null(conjinv_, conjinv_w_, pair(i, j)); }
  const Word* c_word(Gen i, Gen j) const { return word_or_null(c_, c_w_, pair(i, j)); }
  const Word* d_word(Gen i, Gen j) const { return word_or_null(d_, d_w_, pair(i, j)); }
  const Word* f_word(Gen i) const { return word_or_null(f_, f_w_, idx(i)); }

  friend bool operator==(const GroupPresentation& a, const GroupPresentation& b);

 private:
  friend GroupPresentation validate(const RawGroupPresentation& raw);
  friend GroupPresentation with_derived(const GroupPresentation& p, const DerivedTables& t);
  friend DerivedTables derive_inverse_relations(const GroupPresentation& p, std::uint64_t budget);

  using Slot = std::optional<ExponentTail>;

  std::size_t idx(Gen i) const { return static_cast<std::size_t>(i - 1); }
  std::size_t pair(Gen i, Gen j) const {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1);
  }
  static const ExponentTail* opt(const Slot& s) { return s ? &*s : nullptr; }
  static const Word* word_or_null(const std::vector<Slot>& s, const std::vector<Word>& w, std::size_t k) {
    return s[k] ? &w[k] : nullptr;
  }

  void resize(int n);
  void install_c(Gen i, Gen j, ExponentTail t);
  void install_d(Gen i, Gen j, ExponentTail t);
  void install_f(Gen i, ExponentTail t);

  int n_ = 0;
  std::vector<RelativeOrder> orders_;
  std::vector<Slot> power_, conj_, conjinv_, c_, d_, f_;
  std::vector<Word> power_w_, conj_w_, conjinv_w_, c_w_, d_w_, f_w_;
  bool derived_complete_ = false;
};

/// Checks GR1-GR3 data and fills omitted conjugate relations with the
/// commuting default (tail g_j). Throws ExponentOutOfRange, BadIndex or
/// MissingRelation.
GroupPresentation validate(const RawGroupPresentation& raw);

/// Computes the GR4-GR6 tails bottom-up over the generator chain: the tails
/// for index i are collected inverses inside the sub-presentation on
/// g_{i+1}..g_n, whose own derived tails are finished first. Works
/// mechanically on inconsistent input too.
DerivedTables derive_inverse_relations(const GroupPresentation& p,
                                       std::uint64_t budget = kDefaultStepBudget);

GroupPresentation with_derived(const GroupPresentation& p, const DerivedTables& tables);

/// validate + derive_inverse_relations + with_derived.
GroupPresentation prepare(const RawGroupPresentation& raw, std::uint64_t budget = kDefaultStepBudget);

/// Every a-tail (and b-tail) is g_j times a tail in g_{j+1}..g_n.
bool is_nilpotent_form(const GroupPresentation& p);

/// Least weight function; throws NotNilpotentForm or WeightDivergence.
WeightAssignment compute_weights(const GroupPresentation& p);

/// All relations spelled out explicitly; validate(to_raw(p)) == p.
RawGroupPresentation to_raw(const GroupPresentation& p);

}  // namespace pcp
