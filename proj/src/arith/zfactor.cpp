#include "cchain/arith/zfactor.hpp"

#include <algorithm>

#include "cchain/arith/factor.hpp"
#include "cchain/arith/field.hpp"
#include "cchain/core/error.hpp"

namespace cchain {

namespace {

constexpr u64 kModulus = (1ULL << 61) - 1;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Exact division by a monic divisor; returns false when the remainder is nonzero.
bool zdiv_monic(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  ZPoly r = a;
  q.clear();
  if (r.size() < b.size()) return r.empty();
  const std::size_t db = b.size() - 1;
  q.assign(r.size() - db, 0);
  for (std::size_t i = r.size() - 1;; --i) {
    const std::size_t shift = i - db;
    mpz_class c = r[i];
    q[shift] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= c * b[j];
    if (i == db) break;
  }
  ztrim(r);
  ztrim(q);
  return r.empty();
}

ZPoly symmetric_lift(const Poly<PrimeField>& f, u64 P) {
  ZPoly out;
  for (u64 c : f) {
    mpz_class v = static_cast<unsigned long>(c);
    if (c > P / 2) v -= static_cast<unsigned long>(P);
    out.push_back(v);
  }
  ztrim(out);
  return out;
}

Poly<PrimeField> reduce_mod(const PrimeField& K, const ZPoly& f, u64 P) {
  Poly<PrimeField> out;
  mpz_class PP = static_cast<unsigned long>(P);
  for (const auto& c : f) {
    mpz_class r = c % PP;
    if (r < 0) r += PP;
    out.push_back(r.get_ui());
  }
  poly_trim(K, out);
  return out;
}

// Irreducible factors of a squarefree monic integer polynomial.
std::vector<ZPoly> factor_squarefree(ZPoly g) {
  if (g.size() <= 2) return {g};
  mpz_class bound = factor_coefficient_bound(g);
  u64 P = kModulus;
  if (2 * bound >= mpz_class(static_cast<unsigned long>(P)))
    throw DomainError("integer polynomial coefficients too large for modular factoring");
  Poly<PrimeField> gm;
  PrimeField K(P);
  while (true) {
    K = PrimeField(P);
    gm = reduce_mod(K, g, P);
    if (poly_deg(K, poly_gcd(K, gm, poly_deriv(K, gm))) == 0) break;
    do P -= 2; while (!is_prime(P));
  }
  std::vector<Poly<PrimeField>> mod_factors;
  for (auto& [h, m] : factor_poly(K, gm).factors) mod_factors.push_back(h);

  std::vector<ZPoly> out;
  std::size_t s = 1;
  while (2 * s <= mod_factors.size()) {
    bool found = false;
    const std::size_t r = mod_factors.size();
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      Poly<PrimeField> prod = poly_const(K, K.one());
      for (auto i : idx) prod = poly_mul(K, prod, mod_factors[i]);
      ZPoly cand = symmetric_lift(prod, P);
      ZPoly quot;
      if (zdiv_monic(g, cand, quot)) {
        out.push_back(cand);
        g = quot;
        for (std::size_t i = s; i-- > 0;) mod_factors.erase(mod_factors.begin() + idx[i]);
        found = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == r - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (g.size() > 1) out.push_back(g);
  return out;
}

}  // namespace

u64 zfactor_modulus() { return kModulus; }

bool zpoly_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

ZPoly to_integer_poly(const Poly<RationalField>& f) {
  ZPoly out;
  for (const auto& c : f) {
    if (c.get_den() != 1) throw DomainError("polynomial has non-integral coefficients");
    out.push_back(c.get_num());
  }
  return out;
}

Poly<RationalField> to_rational_poly(const ZPoly& f) {
  Poly<RationalField> out;
  for (const auto& c : f) out.push_back(mpq_class(c));
  return out;
}

mpz_class factor_coefficient_bound(const ZPoly& f) {
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class root = sqrt(norm2) + 1;
  mpz_class two_pow = 1;
  two_pow <<= static_cast<mp_bitcnt_t>(f.empty() ? 0 : f.size() - 1);
  return two_pow * root;
}

ZPoly radical(const ZPoly& f) {
  RationalField Q;
  auto fq = to_rational_poly(f);
  auto g = poly_gcd(Q, fq, poly_deriv(Q, fq));
  return to_integer_poly(poly_div_exact(Q, fq, g));
}

std::vector<std::pair<ZPoly, int>> factor_integer_poly(const ZPoly& f) {
  if (f.empty()) throw DomainError("cannot factor the zero polynomial");
  if (f.back() != 1) throw DomainError("integer factoring expects a monic polynomial");
  RationalField Q;
  // Yun's squarefree decomposition over Q; monic factors stay integral by Gauss's lemma.
  std::vector<std::pair<ZPoly, int>> out;
  auto a = to_rational_poly(f);
  auto c = poly_gcd(Q, a, poly_deriv(Q, a));
  auto w = poly_div_exact(Q, a, c);
  int i = 1;
  while (w.size() > 1) {
    auto y = poly_gcd(Q, w, c);
    auto z = poly_div_exact(Q, w, y);
    if (z.size() > 1)
      for (auto& g : factor_squarefree(to_integer_poly(z))) out.emplace_back(g, i);
    w = y;
    c = poly_div_exact(Q, c, y);
    ++i;
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return zpoly_less(x.first, y.first); });
  return out;
}

}  // namespace cchain
