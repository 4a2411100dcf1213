#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cchain/arith/primes.hpp"

namespace cchain {

/// The prime field F_p, elements stored as canonical residues in [0, p).
class PrimeField {
 public:
  using Elem = u64;

  PrimeField() = default;
  explicit PrimeField(u64 p);

  u64 characteristic() const { return p_; }
  int degree() const { return 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(i64 v) const { return reduce(v, p_); }

  Elem add(Elem a, Elem b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return mulmod(a, b, p_); }
  Elem inv(Elem a) const;
  Elem pow(Elem a, u128 e) const;
  Elem frobenius(Elem a) const { return a; }

  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  bool less(Elem a, Elem b) const { return a < b; }

  std::vector<u64> coords(Elem a) const { return {a}; }
  Elem from_coords(std::span<const u64> c) const { return c.empty() ? 0 : c[0] % p_; }
  std::string to_string(Elem a) const { return std::to_string(a); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  u64 p_ = 2;
};

inline constexpr int kMaxExtDegree = 16;

/// Element of F_{p^d}: coefficients of a polynomial of degree < d in the generator.
struct ExtElem {
  std::array<u64, kMaxExtDegree> c{};
  bool operator==(const ExtElem&) const = default;
};

/// F_{p^d} = F_p[x]/(m(x)) with an explicitly stored monic irreducible modulus m.
class FiniteField {
 public:
  using Elem = ExtElem;

  FiniteField() = default;
  /// Field with the given monic modulus (coefficients low to high, leading 1 included).
  FiniteField(u64 p, std::vector<u64> modulus);

  /// The lexicographically smallest monic irreducible of degree d defines the field.
  static FiniteField canonical(u64 p, int d);

  u64 characteristic() const { return p_; }
  int degree() const { return d_; }
  const std::vector<u64>& modulus() const { return modulus_; }

  Elem zero() const { return {}; }
  Elem one() const;
  Elem from_int(i64 v) const;
  /// The class of x, a root of the modulus.
  Elem generator() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(Elem a, u128 e) const;
  Elem frobenius(const Elem& a) const { return pow(a, p_); }

  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool less(const Elem& a, const Elem& b) const;
  /// True when the element lies in the prime subfield.
  bool is_prime_subfield(const Elem& a) const;

  std::vector<u64> coords(const Elem& a) const;
  Elem from_coords(std::span<const u64> c) const;
  std::string to_string(const Elem& a) const;

  bool operator==(const FiniteField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

 private:
  u64 p_ = 2;
  int d_ = 1;
  std::vector<u64> modulus_{0, 1};
};

/// Rabin irreducibility test for a monic polynomial over F_p (coefficients low to high).
bool is_irreducible_mod_p(const std::vector<u64>& f, u64 p);

}  // namespace cchain
