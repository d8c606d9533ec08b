#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcp/coefficients.hpp"
#include "pcp/group_consistency.hpp"
#include "pcp/presentation.hpp"

namespace pcp {

using LinearCombination = std::vector<std::pair<Gen, Scalar>>;

/// Unvalidated algebra presentation. `products[{x, y}]` is the right side of
/// a_x * a_y; `power[i]` the right side of r_i * a_i.
struct RawAlgebraPresentation {
  int n = 0;
  RingDescriptor ring = RingDescriptor::integers();
  std::vector<RelativeOrder> orders;
  std::map<Gen, LinearCombination> power;
  std::map<std::pair<Gen, Gen>, LinearCombination> products;
};

/// Nilpotent presentation of an associative algebra: dense structure
/// constants with a_x a_y supported on generators above max(x, y) and power
/// rows supported above i.
class AlgebraPresentation {
 public:
  int size() const noexcept { return n_; }
  const RingDescriptor& ring() const noexcept { return ring_; }
  const RelativeOrder& order(Gen i) const { return orders_[static_cast<std::size_t>(i - 1)]; }

  /// Coefficients of r_i a_i (index k-1 for a_k); null when r_i is infinite.
  const std::vector<Scalar>* power_row(Gen i) const {
    const auto& row = power_[static_cast<std::size_t>(i - 1)];
    return row.empty() ? nullptr : &row;
  }
  /// Coefficients of a_x a_y.
  const std::vector<Scalar>& product(Gen x, Gen y) const {
    return products_[static_cast<std::size_t>(x - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y - 1)];
  }

  friend bool operator==(const AlgebraPresentation&, const AlgebraPresentation&) = default;

 private:
  friend AlgebraPresentation validate_algebra(const RawAlgebraPresentation& raw);

  AlgebraPresentation(int n, RingDescriptor ring) : n_(n), ring_(ring) {}

  int n_ = 0;
  RingDescriptor ring_;
  std::vector<RelativeOrder> orders_;
  std::vector<std::vector<Scalar>> power_;
  std::vector<std::vector<Scalar>> products_;
};

/// Omitted products are zero. Throws ExponentOutOfRange, BadIndex,
/// MissingRelation, RingMismatch or UnsupportedRing.
AlgebraPresentation validate_algebra(const RawAlgebraPresentation& raw);

/// Same relations as `p`, spelled out in full.
RawAlgebraPresentation to_raw(const AlgebraPresentation& p);

struct Term {
  Scalar coef;
  std::vector<Gen> word;  // non-empty

  friend bool operator==(const Term&, const Term&) = default;
};

/// Linear combination of non-empty words, not merged or sorted.
class FreeElement {
 public:
  explicit FreeElement(RingDescriptor ring) : ring_(ring) {}

  static FreeElement generator(RingDescriptor ring, Gen g);

  const RingDescriptor& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  void add_term(Scalar coef, std::vector<Gen> word);

  FreeElement& operator+=(const FreeElement& other);
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator*(const Scalar& lambda, const FreeElement& e);
  /// Distributes over both sums; words concatenate.
  friend FreeElement operator*(const FreeElement& a, const FreeElement& b);

 private:
  RingDescriptor ring_;
  std::vector<Term> terms_;
};

/// x_1 a_1 + ... + x_n a_n.
class NormalVector {
 public:
  NormalVector() = default;
  NormalVector(RingDescriptor ring, int n) : coeffs_(static_cast<std::size_t>(n), Scalar(ring)) {}

  int size() const noexcept { return static_cast<int>(coeffs_.size()); }
  const Scalar& operator[](Gen g) const { return coeffs_[static_cast<std::size_t>(g - 1)]; }
  Scalar& operator[](Gen g) { return coeffs_[static_cast<std::size_t>(g - 1)]; }
  bool is_zero() const;

  FreeElement to_free(RingDescriptor ring) const;

  friend bool operator==(const NormalVector&, const NormalVector&) = default;

 private:
  std::vector<Scalar> coeffs_;
};

/// `a1 + 2*a3`, or `0`.
std::string to_string(const NormalVector& v);

/// The collection function: expands the leftmost adjacent pair of every word
/// through the structure constants until all words have length one, merges,
/// then reduces coefficients with finite relative order from a_1 up to a_n,
/// pushing quotients into higher generators along the power rows.
NormalVector normalize(const AlgebraPresentation& p, const FreeElement& e);

NormalVector generator_vector(const AlgebraPresentation& p, Gen g);
NormalVector add(const AlgebraPresentation& p, const NormalVector& u, const NormalVector& v);
NormalVector scalar_mul(const AlgebraPresentation& p, const Scalar& lambda, const NormalVector& u);
/// Bilinear product of normal forms.
NormalVector multiply(const AlgebraPresentation& p, const NormalVector& u, const NormalVector& v);

/// Least weights with w(a_k) >= w(a_i) when e_{i,k} != 0 and
/// w(a_k) >= w(a_x) + w(a_y) when a_x a_y involves a_k.
WeightAssignment compute_algebra_weights(const AlgebraPresentation& p);

enum class AlgebraTag { A1, A2, A3 };
std::string_view to_string(AlgebraTag tag);

/// A1 uses (i, j, k); A2 and A3 use (i, j). All indices range over 1..n.
struct AlgebraTestEquationId {
  AlgebraTag tag;
  Gen i = 0;
  Gen j = 0;
  Gen k = 0;

  std::vector<Gen> indices() const;
  friend bool operator==(const AlgebraTestEquationId&, const AlgebraTestEquationId&) = default;
};

std::string to_string(const AlgebraTestEquationId& id);

struct AlgebraEquationResult {
  AlgebraTestEquationId id;
  std::string lhs_expr;  // e.g. `a1*(a1*a1)`
  std::string rhs_expr;
  NormalVector lhs_nf;
  NormalVector rhs_nf;
  bool pass = false;
};

struct AlgebraConsistencyReport {
  CheckMode mode = CheckMode::NilpotentFiltered;
  bool verdict = true;
  std::vector<AlgebraEquationResult> failures;
  EquationCounts counts;
};

struct AlgebraCheckOptions {
  CheckMode mode = CheckMode::NilpotentFiltered;
  bool fail_fast = false;
  bool parallel = true;
  std::array<bool, 3> families{true, true, true};
};

/// With weights: ids meeting the weight bound and finiteness conditions, A1 by
/// (i,j,k), then A2, A3 by (i,j). Without weights: finiteness conditions only.
std::vector<AlgebraTestEquationId> enumerate_algebra_test_equations(const AlgebraPresentation& p,
                                                                    const WeightAssignment* w);

AlgebraEquationResult check_algebra_equation(const AlgebraPresentation& p, const AlgebraTestEquationId& id);

std::vector<AlgebraEquationResult> evaluate_algebra_equations_serial(
    const AlgebraPresentation& p, const std::vector<AlgebraTestEquationId>& ids, bool fail_fast = false);
std::vector<AlgebraEquationResult> evaluate_algebra_equations_parallel(
    const AlgebraPresentation& p, const std::vector<AlgebraTestEquationId>& ids);

AlgebraConsistencyReport check_algebra_consistency(const AlgebraPresentation& p,
                                                   const AlgebraCheckOptions& options = {});

}  // namespace pcp
