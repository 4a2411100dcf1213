#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "cchain/arith/primes.hpp"
#include "cchain/core/error.hpp"

namespace cchain {

/// The field Q on top of GMP rationals; same interface as the finite fields so the
/// matrix and polynomial templates apply unchanged.
class RationalField {
 public:
  using Elem = mpq_class;

  u64 characteristic() const { return 0; }
  int degree() const { return 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(i64 v) const { return Elem(static_cast<long>(v)); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw DomainError("division by zero in Q");
    return 1 / a;
  }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool less(const Elem& a, const Elem& b) const { return a < b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const { return true; }
};

/// a mod p for a rational whose denominator is prime to p.
inline u64 reduce_rational(const mpq_class& a, u64 p) {
  mpz_class P = static_cast<unsigned long>(p);
  mpz_class num = a.get_num() % P;
  if (num < 0) num += P;
  mpz_class den = a.get_den() % P;
  if (den == 0) throw DomainError("denominator divisible by " + std::to_string(p));
  return mulmod(num.get_ui(), invmod(den.get_ui(), p), p);
}

}  // namespace cchain
