#include "cchain/eigen/eigensystem.hpp"

#include <algorithm>
#include <numeric>

#include "cchain/arith/factor.hpp"
#include "cchain/core/error.hpp"

namespace cchain {

u64 sturm_bound(u64 N, int k) { return static_cast<u64>(k) * gamma0_index(N) / 12; }

u64 default_table_bound(u64 N, int k) { return std::max<u64>(sturm_bound(N, k), 50); }

namespace {

using PF = PrimeField;
using FF = FiniteField;

Matrix<FF> lift(const FF& E, const Matrix<PF>& A) {
  Matrix<FF> B(E, A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) B(i, j) = E.from_int(static_cast<i64>(A(i, j)));
  return B;
}

template <class F>
Matrix<F> matrix_power(const Matrix<F>& A, std::size_t e) {
  Matrix<F> r = Matrix<F>::identity(A.field(), A.rows());
  for (std::size_t i = 0; i < e; ++i) r = mat_mul(r, A);
  return r;
}

struct Leaf {
  Matrix<FF> basis;  // columns in block coordinates
  std::vector<ExtElem> values;
  bool semisimple = true;
};

bool tuple_less(const FF& E, const std::vector<ExtElem>& a, const std::vector<ExtElem>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return E.less(a[i], b[i]);
  }
  return false;
}

// Splits one F_ell-primary block into Frobenius orbits of joint eigensystems.
std::vector<EigenSystem> split_primary(const PF& K, const std::vector<Matrix<PF>>& ops,
                                       const std::vector<u64>& qs, u64 N, int k, u64 bound) {
  const std::size_t m = ops.empty() ? 0 : ops[0].rows();
  std::vector<Poly<PF>> minpolys;
  int e = 1;
  for (const auto& A : ops) {
    auto fac = factor_poly(K, charpoly(A)).factors;
    minpolys.push_back(fac.at(0).first);
    e = std::lcm(e, poly_deg(K, fac[0].first));
  }
  if (e > kMaxExtDegree) throw DomainError("eigenvalue field degree " + std::to_string(e) + " exceeds supported maximum");
  const FF E = FF::canonical(K.characteristic(), e);

  std::vector<Leaf> leaves{{Matrix<FF>::identity(E, m), {}, true}};
  for (std::size_t t = 0; t < ops.size(); ++t) {
    const Matrix<FF> A = lift(E, ops[t]);
    Poly<FF> g;
    for (auto c : minpolys[t]) g.push_back(E.from_int(static_cast<i64>(c)));
    const auto roots = poly_roots(E, g);
    std::vector<Leaf> next;
    for (auto& leaf : leaves) {
      const Matrix<FF> B = restrict_to(A, leaf.basis);
      const auto I = Matrix<FF>::identity(E, B.rows());
      for (const auto& r : roots) {
        Matrix<FF> shifted = mat_sub(B, mat_scale(I, r));
        Matrix<FF> sub = kernel(matrix_power(shifted, B.rows()));
        if (sub.cols() == 0) continue;
        Leaf child{mat_mul(leaf.basis, sub), leaf.values, leaf.semisimple};
        child.values.push_back(r);
        if (!restrict_to(shifted, sub).is_zero()) child.semisimple = false;
        next.push_back(std::move(child));
      }
    }
    leaves = std::move(next);
  }

  // Group leaves by Frobenius orbit, keeping the smallest conjugate of each.
  std::vector<EigenSystem> out;
  std::vector<std::vector<ExtElem>> seen;
  for (const auto& leaf : leaves) {
    std::vector<ExtElem> best = leaf.values, cur = leaf.values;
    for (int j = 1; j < e; ++j) {
      for (auto& v : cur) v = E.frobenius(v);
      if (tuple_less(E, cur, best)) best = cur;
    }
    if (std::find(seen.begin(), seen.end(), best) != seen.end()) continue;
    seen.push_back(best);
    EigenSystem s;
    s.level = N;
    s.weight = k;
    s.characteristic = K.characteristic();
    s.value_field = E;
    for (std::size_t t = 0; t < qs.size(); ++t) s.eigenvalues[qs[t]] = best[t];
    s.bound = bound;
    s.multiplicity = static_cast<int>(leaf.basis.cols());
    s.semisimple = leaf.semisimple;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Poly<PrimeField> element_charpoly(const FiniteField& E, const ExtElem& a) {
  const int d = E.degree();
  PF K(E.characteristic());
  Matrix<PF> M(K, d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<u64> unit(d, 0);
    unit[j] = 1;
    auto col = E.coords(E.mul(a, E.from_coords(unit)));
    for (int i = 0; i < d; ++i) M(i, j) = col[i];
  }
  return charpoly(M);
}

std::vector<EigenSystem> decompose_operators(const PrimeField& K, const HeckeOperators& ops, u64 N, int k,
                                             u64 bound) {
  if (ops.empty()) throw DomainError("no usable Hecke operators to decompose with");
  const std::size_t n = ops[0].second.rows();
  if (n == 0) throw DomainError("cuspidal subspace is zero");
  std::vector<Matrix<PF>> blocks{Matrix<PF>::identity(K, n)};
  for (const auto& [q, T] : ops) {
    std::vector<Matrix<PF>> next;
    for (auto& W : blocks) {
      const Matrix<PF> A = restrict_to(T, W);
      auto fac = factor_poly(K, charpoly(A)).factors;
      if (fac.size() == 1) {
        next.push_back(std::move(W));
        continue;
      }
      for (auto& [g, mult] : fac) {
        Poly<PF> power = poly_const(K, K.one());
        for (int i = 0; i < mult; ++i) power = poly_mul(K, power, g);
        next.push_back(mat_mul(W, kernel(poly_eval_matrix(power, A))));
      }
    }
    blocks = std::move(next);
  }
  std::vector<u64> qs;
  for (const auto& op : ops) qs.push_back(op.first);
  std::vector<EigenSystem> out;
  for (const auto& W : blocks) {
    std::vector<Matrix<PF>> restricted;
    for (const auto& op : ops) restricted.push_back(restrict_to(op.second, W));
    for (auto& s : split_primary(K, restricted, qs, N, k, bound)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

namespace {

HeckeOperators table_operators(const ModSymSpace<PrimeField>& s, u64 bound) {
  HeckeOperators ops;
  const u64 ell = s.characteristic();
  for (u64 q : primes_up_to(bound)) {
    if (s.level() % q == 0 || q == ell) continue;
    ops.emplace_back(q, s.hecke_cuspidal(q));
  }
  return ops;
}

std::vector<EigenSystem> decompose_plain(const ModSymSpace<PrimeField>& s, u64 bound) {
  if (s.cuspidal_dim() == 0) return {};
  auto ops = table_operators(s, bound);
  if (ops.empty()) throw DomainError("table bound too small: no prime q <= bound with q not dividing N*ell");
  return decompose_operators(s.field(), ops, s.level(), s.weight(), bound);
}

}  // namespace

std::vector<EigenSystem> decompose(const ModSymSpace<PrimeField>& s, u64 table_bound) {
  const u64 bound = table_bound ? table_bound : default_table_bound(s.level(), s.weight());
  if (s.cuspidal_dim() == 0) throw DomainError("cuspidal subspace is zero");
  auto systems = decompose_plain(s, bound);
  std::vector<EigenSystem> lower;
  for (u64 M : divisors(s.level())) {
    if (M == s.level()) continue;
    auto sub = build_space(M, s.weight(), s.characteristic());
    for (auto& e : decompose_plain(sub, bound)) lower.push_back(std::move(e));
  }
  for (auto& e : systems) {
    e.is_new = std::none_of(lower.begin(), lower.end(), [&](const EigenSystem& o) { return systems_match(e, o); });
  }
  return systems;
}

std::vector<NewformOrbit> newform_orbits(u64 N, int k, u64 ell, u64 table_bound) {
  auto s = build_space(N, k, ell);
  if (s.cuspidal_dim() == 0) return {};
  std::vector<NewformOrbit> out;
  for (auto& e : decompose(s, table_bound)) {
    if (!e.is_new) continue;
    NewformOrbit o;
    o.level = N;
    o.weight = k;
    o.ell = ell;
    o.index = static_cast<int>(out.size());
    o.label = std::to_string(N) + "." + std::to_string(k) + "." + std::to_string(ell) + "." + std::to_string(o.index);
    o.eigensystem = std::move(e);
    out.push_back(std::move(o));
  }
  return out;
}

EigenSystem frobenius_conjugate(const EigenSystem& e, int power) {
  EigenSystem r = e;
  for (auto& [q, v] : r.eigenvalues)
    for (int i = 0; i < power; ++i) v = e.value_field.frobenius(v);
  return r;
}

EigenSystem canonical_conjugate(const EigenSystem& e) {
  const auto& E = e.value_field;
  auto values = [](const EigenSystem& s) {
    std::vector<ExtElem> v;
    for (auto& [q, x] : s.eigenvalues) v.push_back(x);
    return v;
  };
  EigenSystem best = e, cur = e;
  for (int j = 1; j < e.degree(); ++j) {
    cur = frobenius_conjugate(cur, 1);
    if (tuple_less(E, values(cur), values(best))) best = cur;
  }
  return best;
}

bool systems_match(const EigenSystem& a, const EigenSystem& b) {
  if (a.characteristic != b.characteristic || !(a.value_field == b.value_field)) return false;
  EigenSystem cur = a;
  for (int j = 0; j < a.degree(); ++j) {
    if (j) cur = frobenius_conjugate(cur, 1);
    bool all = true;
    for (auto& [q, v] : cur.eigenvalues) {
      auto it = b.eigenvalues.find(q);
      if (it != b.eigenvalues.end() && !(it->second == v)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool canonical_less(const EigenSystem& a, const EigenSystem& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  PF K(a.characteristic);
  auto ia = a.eigenvalues.begin();
  auto ib = b.eigenvalues.begin();
  for (; ia != a.eigenvalues.end() && ib != b.eigenvalues.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    auto pa = element_charpoly(a.value_field, ia->second);
    auto pb = element_charpoly(b.value_field, ib->second);
    if (!poly_equal(K, pa, pb)) return poly_less(K, pa, pb);
  }
  for (ia = a.eigenvalues.begin(), ib = b.eigenvalues.begin();
       ia != a.eigenvalues.end() && ib != b.eigenvalues.end(); ++ia, ++ib) {
    if (!(ia->second == ib->second)) return a.value_field.less(ia->second, ib->second);
  }
  return a.multiplicity < b.multiplicity;
}

}  // namespace cchain
