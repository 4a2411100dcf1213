#pragma once

#include <map>
#include <string>
#include <vector>

#include "cchain/arith/matrix.hpp"
#include "cchain/arith/rational.hpp"
#include "cchain/arith/zfactor.hpp"
#include "cchain/eigen/eigensystem.hpp"

namespace cchain {

/// A Galois orbit of newforms in characteristic zero: a Hecke-irreducible block of the
/// rational cuspidal modular-symbol space that does not come from a lower level.
/// Labelled "N.k.index"; the eigenvalue field itself is never computed.
struct NewformClass {
  u64 level = 0;
  int weight = 0;
  int index = 0;
  std::string label;
  int degree = 0;                                   // dimension of the eigenvalue field over Q
  u64 bound = 0;                                    // operators cover primes q <= bound
  std::map<u64, ZPoly> minpolys;                    // minimal polynomial of a_q (q not dividing N)
  std::map<u64, Matrix<RationalField>> operators;   // T_q on the block, q not dividing N
};

/// New classes at level N, weight k, in canonical order. Results are memoized per process.
const std::vector<NewformClass>& newform_classes(u64 N, int k, u64 table_bound = 0);

/// Mod-ell eigensystems of a class: T-stable Z_(ell)-lattice in the block, reduced mod ell,
/// then decomposed. Works for every prime ell, including ell dividing 6N.
std::vector<EigenSystem> class_reductions(const NewformClass& c, u64 ell);

/// Maps "delta" and "f11" to their class labels; other strings pass through.
std::string resolve_alias(const std::string& label);

/// Finds the class with the given label ("N.k.i" or alias); throws DomainError if absent.
const NewformClass& find_class(const std::string& label, u64 table_bound = 0);

}  // namespace cchain
