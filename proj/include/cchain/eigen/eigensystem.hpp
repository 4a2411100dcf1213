#pragma once

#include <map>
#include <string>
#include <vector>

#include "cchain/arith/field.hpp"
#include "cchain/arith/matrix.hpp"
#include "cchain/modsym/modsym.hpp"

namespace cchain {

/// floor(k * mu(N) / 12), mu the index of Gamma0(N).
u64 sturm_bound(u64 N, int k);

/// Eigenvalue tables run over primes q <= this bound (at least the Sturm bound).
u64 default_table_bound(u64 N, int k);

/// A simultaneous eigensystem of the Hecke operators T_q (q prime, q <= bound, q not
/// dividing N*ell), with values in the canonical field F_{ell^d}. Stored as the
/// lexicographically smallest member of its Frobenius orbit.
struct EigenSystem {
  u64 level = 0;
  int weight = 0;
  u64 characteristic = 0;
  FiniteField value_field;
  std::map<u64, ExtElem> eigenvalues;
  u64 bound = 0;
  bool is_new = false;
  int multiplicity = 0;    // dimension of one generalized eigenspace over the value field
  bool semisimple = true;  // every T_q acts as a scalar on that eigenspace

  int degree() const { return value_field.degree(); }
};

/// Newform orbit label components; the string form is "N.k.ell.index".
struct NewformOrbit {
  u64 level = 0;
  int weight = 0;
  u64 ell = 0;
  int index = 0;
  std::string label;
  EigenSystem eigensystem;

  int galois_orbit_size() const { return eigensystem.degree(); }
};

using HeckeOperators = std::vector<std::pair<u64, Matrix<PrimeField>>>;

/// Joint eigen-decomposition of commuting operators over F_ell (listed by ascending q).
/// Returns one canonical representative per Frobenius orbit, in canonical order.
std::vector<EigenSystem> decompose_operators(const PrimeField& K, const HeckeOperators& ops, u64 N, int k,
                                             u64 bound);

/// Decomposes the cuspidal subspace; table_bound 0 selects default_table_bound.
/// Systems already present at a proper divisor level are marked is_new = false.
std::vector<EigenSystem> decompose(const ModSymSpace<PrimeField>& s, u64 table_bound = 0);

/// New systems at level N with canonical indices.
std::vector<NewformOrbit> newform_orbits(u64 N, int k, u64 ell, u64 table_bound = 0);

/// Applies x -> x^(ell^power) to every eigenvalue (no re-canonicalization).
EigenSystem frobenius_conjugate(const EigenSystem& e, int power = 1);

/// Lexicographically smallest Frobenius conjugate.
EigenSystem canonical_conjugate(const EigenSystem& e);

/// True when some Frobenius conjugate of a agrees with b at every common q.
bool systems_match(const EigenSystem& a, const EigenSystem& b);

/// Canonical order: degree, then F_ell-charpolys of a_q by ascending q, then values.
bool canonical_less(const EigenSystem& a, const EigenSystem& b);

/// Characteristic polynomial over F_p of multiplication by a in F_{p^d}.
Poly<PrimeField> element_charpoly(const FiniteField& E, const ExtElem& a);

}  // namespace cchain
