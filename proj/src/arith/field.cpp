#include "cchain/arith/field.hpp"

#include <algorithm>
#include <sstream>

#include "cchain/core/error.hpp"

namespace cchain {
namespace {

using Vec = std::vector<u64>;

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec poly_rem(Vec a, const Vec& f, u64 p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  u64 lead_inv = invmod(f.back(), p);
  while (a.size() > df) {
    u64 c = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j) {
      a[shift + j] = (a[shift + j] + p - mulmod(c, f[j], p)) % p;
    }
    trim(a);
  }
  return a;
}

Vec poly_mulmod(const Vec& a, const Vec& b, const Vec& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_rem(std::move(r), f, p);
}

Vec poly_powmod(Vec base, u64 e, const Vec& f, u64 p) {
  Vec result{1};
  base = poly_rem(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Vec poly_gcd(Vec a, Vec b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

PrimeField::PrimeField(u64 p) : p_(p) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
  return invmod(a, p_);
}

PrimeField::Elem PrimeField::pow(Elem a, u128 e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool is_irreducible_mod_p(const std::vector<u64>& f, u64 p) {
  Vec g = f;
  trim(g);
  if (g.size() < 2) return false;
  const u64 d = g.size() - 1;
  if (d == 1) return true;
  // x^(p^i) mod f for i = 0..d
  std::vector<Vec> frob{poly_rem(Vec{0, 1}, g, p)};
  for (u64 i = 1; i <= d; ++i) frob.push_back(poly_powmod(frob.back(), p, g, p));
  Vec x = poly_rem(Vec{0, 1}, g, p);
  if (frob[d] != x) return false;
  for (auto [r, e] : factorize(d)) {
    Vec h = frob[d / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Vec common = poly_gcd(h, g, p);
    if (common.size() > 1) return false;
  }
  return true;
}

FiniteField::FiniteField(u64 p, std::vector<u64> modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  for (auto& c : modulus_) c %= p;
  trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1) throw DomainError("field modulus must be monic of degree >= 1");
  d_ = static_cast<int>(modulus_.size()) - 1;
  if (d_ > kMaxExtDegree) throw DomainError("extension degree " + std::to_string(d_) + " exceeds supported maximum");
  if (!is_irreducible_mod_p(modulus_, p_)) throw DomainError("field modulus is reducible");
}

FiniteField FiniteField::canonical(u64 p, int d) {
  if (d < 1 || d > kMaxExtDegree) throw DomainError("unsupported extension degree " + std::to_string(d));
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  // Enumerate x^d + c_{d-1} x^{d-1} + ... + c_0 with c_{d-1} most significant.
  std::vector<u64> f(d + 1, 0);
  f[d] = 1;
  while (true) {
    if (is_irreducible_mod_p(f, p)) return FiniteField(p, f);
    int i = 0;
    while (i < d) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    if (i == d) throw DomainError("no irreducible polynomial found");
  }
}

FiniteField::Elem FiniteField::one() const {
  Elem e;
  e.c[0] = 1 % p_;
  return e;
}

FiniteField::Elem FiniteField::from_int(i64 v) const {
  Elem e;
  e.c[0] = reduce(v, p_);
  return e;
}

FiniteField::Elem FiniteField::generator() const {
  if (d_ == 1) return from_int(static_cast<i64>(p_ - modulus_[0]));
  Elem e;
  e.c[1] = 1;
  return e;
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
  Elem r;
  for (int i = 0; i < d_; ++i) {
    u64 s = a.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const {
  Elem r;
  for (int i = 0; i < d_; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i];
  return r;
}

FiniteField::Elem FiniteField::neg(const Elem& a) const {
  Elem r;
  for (int i = 0; i < d_; ++i) r.c[i] = a.c[i] == 0 ? 0 : p_ - a.c[i];
  return r;
}

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
  if (d_ == 1) {
    Elem r;
    r.c[0] = mulmod(a.c[0], b.c[0], p_);
    return r;
  }
  std::array<u64, 2 * kMaxExtDegree> prod{};
  for (int i = 0; i < d_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + mulmod(a.c[i], b.c[j], p_)) % p_;
  }
  for (int i = 2 * d_ - 2; i >= d_; --i) {
    u64 c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (int j = 0; j < d_; ++j) {
      prod[i - d_ + j] = (prod[i - d_ + j] + p_ - mulmod(c, modulus_[j], p_)) % p_;
    }
  }
  Elem r;
  std::copy(prod.begin(), prod.begin() + d_, r.c.begin());
  return r;
}

FiniteField::Elem FiniteField::inv(const Elem& a) const {
  if (is_zero(a)) throw DomainError("division by zero in F_" + std::to_string(p_) + "^" + std::to_string(d_));
  // Extended Euclid on (modulus, a): track s with s * a = r (mod modulus).
  Vec r0 = modulus_, r1 = coords(a);
  trim(r1);
  Vec s0{}, s1{1};
  while (r1.size() > 1) {
    Vec q(r0.size() - r1.size() + 1, 0);
    Vec rem = r0;
    u64 lead_inv = invmod(r1.back(), p_);
    while (rem.size() >= r1.size()) {
      u64 c = mulmod(rem.back(), lead_inv, p_);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) {
        rem[shift + j] = (rem[shift + j] + p_ - mulmod(c, r1[j], p_)) % p_;
      }
      trim(rem);
      if (rem.empty()) break;
    }
    // s2 = s0 - q * s1
    Vec qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = (qs[i + j] + mulmod(q[i], s1[j], p_)) % p_;
    Vec s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      u64 x = i < s0.size() ? s0[i] : 0;
      u64 y = i < qs.size() ? qs[i] : 0;
      s2[i] = (x + p_ - y) % p_;
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant
  u64 c = invmod(r1[0], p_);
  Elem out;
  Vec s = poly_rem(s1, modulus_, p_);
  for (std::size_t i = 0; i < s.size(); ++i) out.c[i] = mulmod(s[i], c, p_);
  return out;
}

FiniteField::Elem FiniteField::pow(Elem a, u128 e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool FiniteField::is_zero(const Elem& a) const {
  for (int i = 0; i < d_; ++i)
    if (a.c[i] != 0) return false;
  return true;
}

bool FiniteField::less(const Elem& a, const Elem& b) const {
  for (int i = 0; i < d_; ++i) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

bool FiniteField::is_prime_subfield(const Elem& a) const {
  for (int i = 1; i < d_; ++i)
    if (a.c[i] != 0) return false;
  return true;
}

std::vector<u64> FiniteField::coords(const Elem& a) const { return {a.c.begin(), a.c.begin() + d_}; }

FiniteField::Elem FiniteField::from_coords(std::span<const u64> c) const {
  Elem e;
  for (std::size_t i = 0; i < c.size() && i < static_cast<std::size_t>(d_); ++i) e.c[i] = c[i] % p_;
  return e;
}

std::string FiniteField::to_string(const Elem& a) const {
  if (d_ == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < d_; ++i) os << (i ? "," : "") << a.c[i];
  os << ']';
  return os.str();
}

}  // namespace cchain
