#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cchain/arith/primes.hpp"
#include "cchain/core/error.hpp"

namespace cchain {

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
/// The zero polynomial is the empty vector.
template <class F>
using Poly = std::vector<typename F::Elem>;

template <class F>
void poly_trim(const F& K, Poly<F>& a) {
  while (!a.empty() && K.is_zero(a.back())) a.pop_back();
}

template <class F>
int poly_deg(const F&, const Poly<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
Poly<F> poly_const(const F& K, typename F::Elem c) {
  if (K.is_zero(c)) return {};
  return {c};
}

template <class F>
Poly<F> poly_x(const F& K) {
  return {K.zero(), K.one()};
}

/// x - c
template <class F>
Poly<F> poly_linear(const F& K, const typename F::Elem& c) {
  return {K.neg(c), K.one()};
}

template <class F>
bool poly_equal(const F& K, const Poly<F>& a, const Poly<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!K.equal(a[i], b[i])) return false;
  return true;
}

/// Lexicographic comparison of coefficient lists, highest degree first; shorter sorts first.
template <class F>
bool poly_less(const F& K, const Poly<F>& a, const Poly<F>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (!K.equal(a[i], b[i])) return K.less(a[i], b[i]);
  }
  return false;
}

template <class F>
Poly<F> poly_add(const F& K, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = K.add(r[i], b[i]);
  poly_trim(K, r);
  return r;
}

template <class F>
Poly<F> poly_sub(const F& K, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
  poly_trim(K, r);
  return r;
}

template <class F>
Poly<F> poly_scale(const F& K, const Poly<F>& a, const typename F::Elem& c) {
  if (K.is_zero(c)) return {};
  Poly<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = K.mul(a[i], c);
  poly_trim(K, r);
  return r;
}

template <class F>
Poly<F> poly_mul(const F& K, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (K.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
  }
  poly_trim(K, r);
  return r;
}

/// a = q*b + r with deg r < deg b.
template <class F>
void poly_divrem(const F& K, const Poly<F>& a, const Poly<F>& b, Poly<F>& q, Poly<F>& r) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  r = a;
  poly_trim(K, r);
  if (r.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, K.zero());
  auto lead_inv = K.inv(b.back());
  while (r.size() >= b.size()) {
    auto c = K.mul(r.back(), lead_inv);
    std::size_t shift = r.size() - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = K.sub(r[shift + j], K.mul(c, b[j]));
    r.pop_back();  // leading term cancels exactly
    poly_trim(K, r);
  }
  poly_trim(K, q);
}

template <class F>
Poly<F> poly_rem(const F& K, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> q, r;
  poly_divrem(K, a, b, q, r);
  return r;
}

template <class F>
Poly<F> poly_div_exact(const F& K, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> q, r;
  poly_divrem(K, a, b, q, r);
  if (!r.empty()) throw DomainError("polynomial division is not exact");
  return q;
}

template <class F>
Poly<F> poly_monic(const F& K, const Poly<F>& a) {
  if (a.empty()) return a;
  return poly_scale(K, a, K.inv(a.back()));
}

template <class F>
Poly<F> poly_gcd(const F& K, Poly<F> a, Poly<F> b) {
  poly_trim(K, a);
  poly_trim(K, b);
  while (!b.empty()) {
    Poly<F> r = poly_rem(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(K, a);
}

template <class F>
Poly<F> poly_deriv(const F& K, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = K.mul(a[i], K.from_int(static_cast<i64>(i)));
  poly_trim(K, r);
  return r;
}

template <class F>
typename F::Elem poly_eval(const F& K, const Poly<F>& a, const typename F::Elem& x) {
  auto acc = K.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = K.add(K.mul(acc, x), a[i]);
  return acc;
}

template <class F>
Poly<F> poly_mulmod(const F& K, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return poly_rem(K, poly_mul(K, a, b), m);
}

template <class F>
Poly<F> poly_powmod(const F& K, Poly<F> base, u128 e, const Poly<F>& m) {
  Poly<F> result = poly_rem(K, poly_const(K, K.one()), m);
  base = poly_rem(K, base, m);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(K, result, base, m);
    e >>= 1;
    if (e) base = poly_mulmod(K, base, base, m);
  }
  return result;
}

/// a^(|K|) mod m, computed as d successive characteristic powers so |K| may exceed 128 bits.
template <class F>
Poly<F> poly_frobenius_mod(const F& K, const Poly<F>& a, const Poly<F>& m) {
  Poly<F> r = poly_rem(K, a, m);
  for (int i = 0; i < K.degree(); ++i) r = poly_powmod(K, r, K.characteristic(), m);
  return r;
}

template <class F>
std::string poly_to_string(const F& K, const Poly<F>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += K.to_string(a[i]);
  }
  return s + "]";
}

}  // namespace cchain
