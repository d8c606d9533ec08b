#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "pcp/presentation.hpp"

namespace pcp {

enum class RingKind { Integers, Rationals, PrimeField };

class RingDescriptor {
 public:
  static RingDescriptor integers() { return RingDescriptor(RingKind::Integers, 0); }
  static RingDescriptor rationals() { return RingDescriptor(RingKind::Rationals, 0); }
  /// Throws UnsupportedRing unless p is prime.
  static RingDescriptor prime_field(unsigned long p);

  RingKind kind() const noexcept { return kind_; }
  unsigned long characteristic() const noexcept { return p_; }
  bool is_field() const noexcept { return kind_ != RingKind::Integers; }

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;

 private:
  RingDescriptor(RingKind kind, unsigned long p) : kind_(kind), p_(p) {}
  RingKind kind_;
  unsigned long p_;
};

/// `Z`, `Q` or `GF(p)`.
std::string to_string(const RingDescriptor& ring);

/// Element of a coefficient ring. Integers and residues are stored as
/// rationals with denominator one; residues are kept in [0, p), rationals in
/// lowest terms.
class Scalar {
 public:
  explicit Scalar(RingDescriptor ring) : ring_(ring) {}
  /// Throws RingMismatch for a non-integral value over Z or GF(p).
  Scalar(RingDescriptor ring, mpq_class value);
  Scalar(RingDescriptor ring, long value) : Scalar(ring, mpq_class(value)) {}

  const RingDescriptor& ring() const noexcept { return ring_; }
  const mpq_class& value() const noexcept { return value_; }
  /// Precondition: integral value (Z or GF(p)).
  BigInt integer() const { return value_.get_num(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  RingDescriptor ring_;
  mpq_class value_;
};

/// Throw RingMismatch for operands from different rings.
Scalar add(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
Scalar sub(const Scalar& a, const Scalar& b);
inline bool is_zero(const Scalar& a) { return a.is_zero(); }

/// Euclidean division x = q*r + rem with 0 <= rem < r. For r infinite the
/// result is (0, x) in any ring; finite r requires the integers
/// (UnsupportedRing otherwise).
std::pair<Scalar, Scalar> reduce_mod_order(const Scalar& x, const RelativeOrder& r);

/// `-3`, `3/4`, `2`.
std::string to_string(const Scalar& s);

}  // namespace pcp
