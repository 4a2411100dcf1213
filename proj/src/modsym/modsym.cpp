#include "cchain/modsym/modsym.hpp"

#include <numeric>
#include <string>

#include "cchain/core/error.hpp"

namespace cchain {
namespace {

i64 binom(int n, int r) {
  i64 b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i64 x1, y1;
  i64 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

i64 inverse_mod(i64 a, i64 m) {
  i64 x, y;
  i64 r = ((a % m) + m) % m;
  egcd(r, m, x, y);
  return ((x % m) + m) % m;
}

struct Cusp {
  i64 num, den;
};

// Gamma0(N)-equivalence of cusps num/den, via the standard inverse-residue test.
bool cusps_equivalent(const Cusp& x, const Cusp& y, i64 N) {
  auto sv = [](const Cusp& c) -> i64 {
    if (c.den == 0) return 1;
    if (c.den == 1) return 0;
    return inverse_mod(c.num, c.den);
  };
  i64 g = std::gcd((x.den % N) * (y.den % N) % N, N);
  if (g <= 1) return true;
  i64 s1 = sv(x) % g, s2 = sv(y) % g;
  i64 diff = (s1 * (y.den % g) - s2 * (x.den % g)) % g;
  return diff == 0;
}

}  // namespace

template <class F>
ModSymSpace<F>::ModSymSpace(const F& K, u64 N, int k) : K_(K), N_(N), k_(k), p1_(N) {
  if (k < 2 || k % 2 != 0) throw DomainError("weight must be even and at least 2");
  impose_relations();
  compute_boundary();
}

template <class F>
void ModSymSpace<F>::act_raw(std::size_t gen, const IntMatrix2& m,
                             std::vector<std::pair<std::size_t, Elem>>& out) const {
  const int w = k_ - 2;
  const std::size_t pi = gen / (k_ - 1);
  const int i = static_cast<int>(gen % (k_ - 1));
  auto [u, v] = p1_.rep(pi);
  const i64 a = m[0], b = m[1], c = m[2], d = m[3];
  const i64 uu = static_cast<i64>(u), vv = static_cast<i64>(v);
  long target = p1_.index(uu * a + vv * c, uu * b + vv * d);
  if (target < 0) return;
  const std::size_t base = static_cast<std::size_t>(target) * (k_ - 1);
  if (w == 0) {
    out.emplace_back(base, K_.one());
    return;
  }
  // (aX + bY)^i (cX + dY)^(w-i), collected by the exponent of X.
  std::vector<Elem> pa(w + 1), pb(w + 1), pc(w + 1), pd(w + 1);
  pa[0] = pb[0] = pc[0] = pd[0] = K_.one();
  for (int e = 1; e <= w; ++e) {
    pa[e] = K_.mul(pa[e - 1], K_.from_int(a));
    pb[e] = K_.mul(pb[e - 1], K_.from_int(b));
    pc[e] = K_.mul(pc[e - 1], K_.from_int(c));
    pd[e] = K_.mul(pd[e - 1], K_.from_int(d));
  }
  std::vector<Elem> coef(w + 1, K_.zero());
  for (int s = 0; s <= i; ++s) {
    Elem left = K_.mul(K_.from_int(binom(i, s)), K_.mul(pa[s], pb[i - s]));
    if (K_.is_zero(left)) continue;
    for (int t = 0; t <= w - i; ++t) {
      Elem right = K_.mul(K_.from_int(binom(w - i, t)), K_.mul(pc[t], pd[w - i - t]));
      coef[s + t] = K_.add(coef[s + t], K_.mul(left, right));
    }
  }
  for (int j = 0; j <= w; ++j)
    if (!K_.is_zero(coef[j])) out.emplace_back(base + j, coef[j]);
}

template <class F>
void ModSymSpace<F>::impose_relations() {
  const std::size_t n = manin_count();
  const IntMatrix2 S{0, -1, 1, 0}, T{0, -1, 1, -1}, T2{-1, 1, -1, 0};
  Matrix<F> rel(K_, 2 * n, n);
  std::vector<std::pair<std::size_t, Elem>> terms;
  for (std::size_t j = 0; j < n; ++j) {
    rel(2 * j, j) = K_.add(rel(2 * j, j), K_.one());
    terms.clear();
    act_raw(j, S, terms);
    for (auto& [t, c] : terms) rel(2 * j, t) = K_.add(rel(2 * j, t), c);
    rel(2 * j + 1, j) = K_.add(rel(2 * j + 1, j), K_.one());
    terms.clear();
    act_raw(j, T, terms);
    act_raw(j, T2, terms);
    for (auto& [t, c] : terms) rel(2 * j + 1, t) = K_.add(rel(2 * j + 1, t), c);
  }
  auto [R, pivots] = rref(std::move(rel));
  std::vector<long> pivot_row(n, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<long>(r);
  std::vector<long> basis_pos(n, -1);
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_row[c] < 0) {
      basis_pos[c] = static_cast<long>(basis_gens_.size());
      basis_gens_.push_back(c);
    }
  }
  reduce_.assign(n, {});
  for (std::size_t c = 0; c < n; ++c) {
    if (basis_pos[c] >= 0) {
      reduce_[c].emplace_back(static_cast<std::uint32_t>(basis_pos[c]), K_.one());
      continue;
    }
    const std::size_t r = static_cast<std::size_t>(pivot_row[c]);
    for (std::size_t f : basis_gens_) {
      if (!K_.is_zero(R(r, f))) reduce_[c].emplace_back(static_cast<std::uint32_t>(basis_pos[f]), K_.neg(R(r, f)));
    }
  }
}

template <class F>
void ModSymSpace<F>::compute_boundary() {
  const i64 N = static_cast<i64>(N_);
  std::vector<Cusp> cusps;
  std::vector<std::vector<std::pair<std::size_t, Elem>>> columns(dimension());
  auto add_cusp = [&](std::size_t col, i64 num, i64 den, const Elem& val) {
    if (den < 0) num = -num, den = -den;
    if (den == 0) num = 1;
    Cusp c{num, den};
    std::size_t ci = 0;
    while (ci < cusps.size() && !cusps_equivalent(cusps[ci], c, N)) ++ci;
    if (ci == cusps.size()) cusps.push_back(c);
    columns[col].emplace_back(ci, val);
  };
  for (std::size_t j = 0; j < dimension(); ++j) {
    const std::size_t gen = basis_gens_[j];
    const int i = static_cast<int>(gen % (k_ - 1));
    if (i != 0 && i != k_ - 2) continue;
    auto [u, v] = p1_.rep(gen / (k_ - 1));
    i64 c = static_cast<i64>(u), d = static_cast<i64>(v);
    if (N_ == 1) c = 0, d = 1;
    // Lift (c : d) to a coprime pair.
    while (std::gcd(c, d) != 1) d += N;
    i64 x, y;
    egcd(d, c, x, y);  // x d + y c = 1
    const i64 a = x, b = -y;
    if (i == k_ - 2) add_cusp(j, a, c, K_.one());
    if (i == 0) add_cusp(j, b, d, K_.neg(K_.one()));
  }
  boundary_ = Matrix<F>(K_, cusps.size(), dimension());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (auto& [ci, val] : columns[j]) boundary_(ci, j) = K_.add(boundary_(ci, j), val);
  cusp_basis_ = kernel(boundary_);
}

template <class F>
std::vector<typename F::Elem> ModSymSpace<F>::hecke_column(std::size_t j, const std::vector<IntMatrix2>& heil) const {
  std::vector<Elem> acc(dimension(), K_.zero());
  std::vector<std::pair<std::size_t, Elem>> terms;
  for (const auto& h : heil) {
    terms.clear();
    act_raw(basis_gens_[j], h, terms);
    for (auto& [t, c] : terms)
      for (auto& [b, r] : reduce_[t]) acc[b] = K_.add(acc[b], K_.mul(c, r));
  }
  return acc;
}

namespace {

void check_hecke_index(u64 q, u64 ell) {
  if (!is_prime(q)) throw DomainError("Hecke index " + std::to_string(q) + " is not prime");
  if (ell != 0 && q == ell) throw DomainError("Hecke index equals the working characteristic");
}

}  // namespace

template <class F>
Matrix<F> ModSymSpace<F>::hecke_full(u64 q) const {
  check_hecke_index(q, K_.characteristic());
  const auto heil = heilbronn_cremona(q);
  const std::size_t n = dimension();
  std::vector<std::vector<Elem>> cols(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < n; ++j) cols[j] = hecke_column(j, heil);
  Matrix<F> T(K_, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) T(i, j) = cols[j][i];
  return T;
}

template <class F>
Matrix<F> ModSymSpace<F>::hecke_full_serial(u64 q) const {
  check_hecke_index(q, K_.characteristic());
  const auto heil = heilbronn_cremona(q);
  const std::size_t n = dimension();
  Matrix<F> T(K_, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = hecke_column(j, heil);
    for (std::size_t i = 0; i < n; ++i) T(i, j) = col[i];
  }
  return T;
}

template <class F>
const Matrix<F>& ModSymSpace<F>::hecke_cuspidal(u64 q) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->hecke.find(q);
    if (it != cache_->hecke.end()) return *it->second;
  }
  auto T = std::make_shared<const Matrix<F>>(restrict_to(hecke_full(q), cusp_basis_));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->hecke.emplace(q, std::move(T));
  return *it->second;
}

void check_space_parameters(u64 N, int k, u64 ell) {
  if (N < 1) throw DomainError("level must be positive");
  if (k % 2 != 0) throw DomainError("weight must be even");
  if (k < 2 || k > 12) throw DomainError("weight outside the supported range 2..12");
  if (!is_prime(ell)) throw DomainError("working characteristic is not prime");
  if (N % ell == 0) throw DomainError("working characteristic divides level");
  if (ell <= 3) throw DomainError("working characteristic divides 6");
  if (static_cast<i64>(ell) <= k - 2) throw DomainError("working characteristic must exceed k - 2");
}

ModSymSpace<PrimeField> build_space(u64 N, int k, u64 ell) {
  check_space_parameters(N, k, ell);
  return ModSymSpace<PrimeField>(PrimeField(ell), N, k);
}

ModSymSpace<RationalField> build_rational_space(u64 N, int k) {
  if (N < 1) throw DomainError("level must be positive");
  if (k % 2 != 0 || k < 2 || k > 12) throw DomainError("weight must be even in the supported range 2..12");
  return ModSymSpace<RationalField>(RationalField{}, N, k);
}

template class ModSymSpace<PrimeField>;
template class ModSymSpace<RationalField>;

}  // namespace cchain
