#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "cchain/arith/poly.hpp"
#include "cchain/arith/rational.hpp"

namespace cchain {

/// Integer polynomial, coefficients low to high, no trailing zeros.
using ZPoly = std::vector<mpz_class>;

/// Converts a polynomial over Q with integral coefficients; throws otherwise.
ZPoly to_integer_poly(const Poly<RationalField>& f);
Poly<RationalField> to_rational_poly(const ZPoly& f);

/// Product of the distinct monic irreducible factors of a monic f.
ZPoly radical(const ZPoly& f);

/// Mignotte-type bound 2^deg * ||f||_2 on the coefficients of any factor of f.
mpz_class factor_coefficient_bound(const ZPoly& f);

/// Largest prime used for modular factoring; factors whose coefficient bound
/// exceeds half of it cannot be recovered.
u64 zfactor_modulus();

/// Factorization of a monic integer polynomial into monic irreducibles with multiplicity,
/// sorted by (degree, coefficients). Throws DomainError when the coefficient bound is too large.
std::vector<std::pair<ZPoly, int>> factor_integer_poly(const ZPoly& f);

bool zpoly_less(const ZPoly& a, const ZPoly& b);

}  // namespace cchain
