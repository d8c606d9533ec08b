#include "pcp/coefficients.hpp"

#include "pcp/error.hpp"

namespace pcp {

RingDescriptor RingDescriptor::prime_field(unsigned long p) {
  BigInt q = p;
  if (p < 2 || mpz_probab_prime_p(q.get_mpz_t(), 30) == 0)
    throw Error(ErrorKind::UnsupportedRing, "GF(" + std::to_string(p) + "): characteristic is not prime");
  return RingDescriptor(RingKind::PrimeField, p);
}

std::string to_string(const RingDescriptor& ring) {
  switch (ring.kind()) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "GF(" + std::to_string(ring.characteristic()) + ")";
  }
  return "?";
}

Scalar::Scalar(RingDescriptor ring, mpq_class value) : ring_(ring), value_(std::move(value)) {
  value_.canonicalize();
  if (ring_.kind() != RingKind::Rationals && value_.get_den() != 1)
    throw Error(ErrorKind::RingMismatch, "non-integral value " + value_.get_str() + " in " + to_string(ring_));
  if (ring_.kind() == RingKind::PrimeField) {
    BigInt r;
    BigInt p = ring_.characteristic();
    mpz_fdiv_r(r.get_mpz_t(), value_.get_num_mpz_t(), p.get_mpz_t());
    value_ = mpq_class(r);
  }
}

namespace {

void same_ring(const Scalar& a, const Scalar& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorKind::RingMismatch, "operands from " + to_string(a.ring()) + " and " + to_string(b.ring()));
}

}  // namespace

Scalar add(const Scalar& a, const Scalar& b) {
  same_ring(a, b);
  return Scalar(a.ring(), a.value() + b.value());
}

Scalar mul(const Scalar& a, const Scalar& b) {
  same_ring(a, b);
  return Scalar(a.ring(), a.value() * b.value());
}

Scalar neg(const Scalar& a) { return Scalar(a.ring(), -a.value()); }

Scalar sub(const Scalar& a, const Scalar& b) { return add(a, neg(b)); }

std::pair<Scalar, Scalar> reduce_mod_order(const Scalar& x, const RelativeOrder& r) {
  if (r.is_infinite()) return {Scalar(x.ring()), x};
  if (x.ring().kind() != RingKind::Integers)
    throw Error(ErrorKind::UnsupportedRing, "finite relative order over " + to_string(x.ring()));
  BigInt q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), x.value().get_num_mpz_t(), r.value().get_mpz_t());
  return {Scalar(x.ring(), mpq_class(q)), Scalar(x.ring(), mpq_class(rem))};
}

std::string to_string(const Scalar& s) { return s.value().get_str(); }

}  // namespace pcp
