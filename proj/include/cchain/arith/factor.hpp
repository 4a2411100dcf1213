#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cchain/arith/poly.hpp"

namespace cchain {

template <class F>
struct Factorization {
  typename F::Elem unit;                        // leading coefficient of the input
  std::vector<std::pair<Poly<F>, int>> factors;  // monic irreducibles with multiplicity
};

namespace detail {

template <class F>
typename F::Elem pth_root(const F& K, typename F::Elem a) {
  // In F_{p^d}, a^(1/p) = a^(p^(d-1)).
  for (int i = 1; i < K.degree(); ++i) a = K.frobenius(a);
  return a;
}

template <class F>
void squarefree(const F& K, Poly<F> f, int mult, std::vector<std::pair<Poly<F>, int>>& out) {
  const u64 p = K.characteristic();
  Poly<F> c = poly_gcd(K, f, poly_deriv(K, f));
  Poly<F> w = poly_div_exact(K, f, c);
  int i = 1;
  while (w.size() > 1) {
    Poly<F> y = poly_gcd(K, w, c);
    Poly<F> fac = poly_div_exact(K, w, y);
    if (fac.size() > 1) out.emplace_back(fac, i * mult);
    w = std::move(y);
    c = poly_div_exact(K, c, w);
    ++i;
  }
  if (c.size() > 1) {
    Poly<F> root((c.size() - 1) / p + 1, K.zero());
    for (std::size_t j = 0; j < root.size(); ++j) root[j] = pth_root(K, c[j * p]);
    squarefree(K, root, mult * static_cast<int>(p), out);
  }
}

template <class F>
std::vector<std::pair<Poly<F>, int>> distinct_degree(const F& K, Poly<F> f) {
  std::vector<std::pair<Poly<F>, int>> out;
  const Poly<F> x = poly_x(K);
  Poly<F> h = poly_rem(K, x, f);
  for (int i = 1; 2 * i <= poly_deg(K, f); ++i) {
    h = poly_frobenius_mod(K, h, f);
    Poly<F> g = poly_gcd(K, poly_sub(K, h, x), f);
    if (g.size() > 1) {
      out.emplace_back(g, i);
      f = poly_div_exact(K, f, g);
      h = poly_rem(K, h, f);
    }
  }
  if (f.size() > 1) out.emplace_back(f, poly_deg(K, f));
  return out;
}

template <class F>
Poly<F> random_poly(const F& K, int deg_below, std::mt19937_64& rng) {
  const u64 p = K.characteristic();
  Poly<F> a(deg_below);
  std::vector<u64> coords(K.degree());
  for (auto& c : a) {
    for (auto& x : coords) x = rng() % p;
    c = K.from_coords(coords);
  }
  poly_trim(K, a);
  return a;
}

template <class F>
void equal_degree(const F& K, const Poly<F>& g, int r, std::mt19937_64& rng, std::vector<Poly<F>>& out) {
  const int n = poly_deg(K, g);
  if (n == r) {
    out.push_back(g);
    return;
  }
  const u64 p = K.characteristic();
  const int steps = K.degree() * r;
  while (true) {
    Poly<F> a = random_poly(K, n, rng);
    if (a.size() < 2) continue;
    Poly<F> probe;
    if (p == 2) {
      Poly<F> t = a, acc = a;
      for (int i = 1; i < steps; ++i) {
        t = poly_mulmod(K, t, t, g);
        acc = poly_add(K, acc, t);
      }
      probe = acc;
    } else {
      Poly<F> b = poly_powmod(K, a, (p - 1) / 2, g);
      Poly<F> t = b, acc = b;
      for (int i = 1; i < steps; ++i) {
        t = poly_powmod(K, t, p, g);
        acc = poly_mulmod(K, acc, t, g);
      }
      probe = poly_sub(K, acc, poly_const(K, K.one()));
    }
    Poly<F> d = poly_gcd(K, probe, g);
    int dd = poly_deg(K, d);
    if (dd > 0 && dd < n) {
      equal_degree(K, d, r, rng, out);
      equal_degree(K, poly_div_exact(K, g, d), r, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization over a finite field: squarefree split, distinct-degree, then
/// equal-degree splitting with a fixed-seed generator. Factors sorted by (degree, coefficients).
template <class F>
Factorization<F> factor_poly(const F& K, Poly<F> f) {
  poly_trim(K, f);
  if (f.empty()) throw DomainError("cannot factor the zero polynomial");
  Factorization<F> result{f.back(), {}};
  f = poly_monic(K, f);
  if (f.size() == 1) return result;

  std::vector<std::pair<Poly<F>, int>> sqf;
  detail::squarefree(K, f, 1, sqf);
  std::mt19937_64 rng(0x5eed1234abcdULL);
  for (auto& [part, mult] : sqf) {
    for (auto& [block, r] : detail::distinct_degree(K, part)) {
      std::vector<Poly<F>> irr;
      detail::equal_degree(K, block, r, rng, irr);
      for (auto& g : irr) result.factors.emplace_back(std::move(g), mult);
    }
  }
  std::sort(result.factors.begin(), result.factors.end(), [&](const auto& a, const auto& b) {
    if (!poly_equal(K, a.first, b.first)) return poly_less(K, a.first, b.first);
    return a.second < b.second;
  });
  // A repeated prime factor can surface from different squarefree layers only with
  // distinct multiplicities; merge them so each irreducible appears once.
  std::vector<std::pair<Poly<F>, int>> merged;
  for (auto& fm : result.factors) {
    if (!merged.empty() && poly_equal(K, merged.back().first, fm.first))
      merged.back().second += fm.second;
    else
      merged.push_back(std::move(fm));
  }
  result.factors = std::move(merged);
  return result;
}

template <class F>
bool poly_is_irreducible(const F& K, Poly<F> f) {
  poly_trim(K, f);
  if (f.size() < 2) return false;
  f = poly_monic(K, f);
  if (poly_deg(K, poly_gcd(K, f, poly_deriv(K, f))) > 0) return false;
  auto dd = detail::distinct_degree(K, f);
  return dd.size() == 1 && dd[0].second == poly_deg(K, f);
}

/// Distinct roots in K, ascending in the field's element order.
template <class F>
std::vector<typename F::Elem> poly_roots(const F& K, const Poly<F>& f) {
  std::vector<typename F::Elem> roots;
  for (auto& [g, m] : factor_poly(K, f).factors) {
    if (g.size() == 2) roots.push_back(K.neg(g[0]));
  }
  std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) { return K.less(a, b); });
  return roots;
}

}  // namespace cchain
