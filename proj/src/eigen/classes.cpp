#include "cchain/eigen/classes.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "cchain/core/error.hpp"

namespace cchain {

namespace {

using QF = RationalField;
using QMatrix = Matrix<QF>;

QMatrix eval_zpoly(const ZPoly& g, const QMatrix& A) { return poly_eval_matrix(to_rational_poly(g), A); }

// Splits every block along the primary decomposition of one operator (when factorable).
void split_blocks(std::vector<QMatrix>& blocks, const QMatrix& T) {
  std::vector<QMatrix> next;
  for (auto& W : blocks) {
    QMatrix A = restrict_to(T, W);
    std::vector<std::pair<ZPoly, int>> fac;
    try {
      fac = factor_integer_poly(to_integer_poly(charpoly(A)));
    } catch (const DomainError&) {
      next.push_back(std::move(W));  // coefficients too large to factor: keep the block
      continue;
    }
    if (fac.size() == 1) {
      next.push_back(std::move(W));
      continue;
    }
    for (auto& [g, m] : fac) {
      ZPoly power{1};
      for (int i = 0; i < m; ++i) {
        ZPoly prod(power.size() + g.size() - 1, 0);
        for (std::size_t a = 0; a < power.size(); ++a)
          for (std::size_t b = 0; b < g.size(); ++b) prod[a + b] += power[a] * g[b];
        power = std::move(prod);
      }
      next.push_back(mat_mul(W, kernel(eval_zpoly(power, A))));
    }
  }
  blocks = std::move(next);
}

struct Block {
  QMatrix basis;
  std::map<u64, ZPoly> minpolys;
  std::map<u64, QMatrix> operators;
};

bool minpolys_match(const std::map<u64, ZPoly>& a, const std::map<u64, ZPoly>& b) {
  for (const auto& [q, f] : a) {
    auto it = b.find(q);
    if (it != b.end() && it->second != f) return false;
  }
  return true;
}

std::vector<NewformClass> compute_classes(u64 N, int k, u64 bound) {
  auto S = build_rational_space(N, k);
  if (S.cuspidal_dim() == 0) return {};
  std::vector<u64> qs;
  for (u64 q : primes_up_to(bound))
    if (N % q != 0) qs.push_back(q);
  std::map<u64, QMatrix> full;
  for (u64 q : qs) full.emplace(q, S.hecke_cuspidal(q));

  std::vector<QMatrix> blocks{QMatrix::identity(QF{}, S.cuspidal_dim())};
  for (u64 q : qs) split_blocks(blocks, full.at(q));
  // One fixed combination separates systems whose individual a_q coincide in degree patterns.
  if (qs.size() >= 3) {
    QMatrix C = mat_add(full.at(qs[0]), mat_add(mat_scale(full.at(qs[1]), mpq_class(3)), mat_scale(full.at(qs[2]), mpq_class(7))));
    split_blocks(blocks, C);
  }

  std::vector<Block> info;
  for (auto& W : blocks) {
    Block b{W, {}, {}};
    for (u64 q : qs) {
      QMatrix A = restrict_to(full.at(q), W);
      b.minpolys[q] = radical(to_integer_poly(charpoly(A)));
      b.operators.emplace(q, std::move(A));
    }
    info.push_back(std::move(b));
  }

  std::vector<NewformClass> out;
  for (auto& b : info) {
    bool old = false;
    for (u64 M : divisors(N)) {
      if (M == N) continue;
      for (const auto& c : newform_classes(M, k, bound))
        if (minpolys_match(b.minpolys, c.minpolys)) old = true;
    }
    if (old) continue;
    NewformClass c;
    c.level = N;
    c.weight = k;
    c.degree = static_cast<int>(b.basis.cols() / 2);
    c.bound = bound;
    c.minpolys = std::move(b.minpolys);
    c.operators = std::move(b.operators);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const NewformClass& a, const NewformClass& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    for (const auto& [q, f] : a.minpolys) {
      const auto& g = b.minpolys.at(q);
      if (f != g) return zpoly_less(f, g);
    }
    return false;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].index = static_cast<int>(i);
    out[i].label = std::to_string(N) + "." + std::to_string(k) + "." + std::to_string(i);
  }
  return out;
}

// ell-adic valuation of a nonzero rational.
long valuation(const mpq_class& x, u64 ell) {
  mpz_class p = static_cast<unsigned long>(ell);
  mpz_class t;
  long v = static_cast<long>(mpz_remove(t.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()));
  v -= static_cast<long>(mpz_remove(t.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()));
  return v;
}

// Basis of the Z_(ell)-module spanned by the columns of G (assumed of full row rank),
// lower triangular with pivots that are powers of ell. Returns the log-index too.
QMatrix lattice_basis(const QMatrix& G, u64 ell, long& index_valuation) {
  const std::size_t m = G.rows();
  std::vector<std::vector<mpq_class>> cols;
  for (std::size_t j = 0; j < G.cols(); ++j) cols.push_back(G.column(j));
  QMatrix B(QF{}, m, m);
  index_valuation = 0;
  std::vector<bool> used(cols.size(), false);
  for (std::size_t i = 0; i < m; ++i) {
    long best_v = 0;
    std::size_t best = cols.size();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j] || sgn(cols[j][i]) == 0) continue;
      long v = valuation(cols[j][i], ell);
      if (best == cols.size() || v < best_v) best = j, best_v = v;
    }
    if (best == cols.size()) throw DomainError("lattice generators do not have full rank");
    used[best] = true;
    auto& piv = cols[best];
    // Rescale by a unit so the pivot is exactly ell^v; keeps entries small.
    mpq_class unit = piv[i];
    mpz_class p = static_cast<unsigned long>(ell);
    mpz_class pw;
    if (best_v >= 0) {
      mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(best_v));
      unit /= mpq_class(pw);
    } else {
      mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(-best_v));
      unit *= mpq_class(pw);
    }
    for (auto& x : piv) x /= unit;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j] || sgn(cols[j][i]) == 0) continue;
      mpq_class f = cols[j][i] / piv[i];
      for (std::size_t r = i; r < m; ++r) cols[j][r] -= f * piv[r];
    }
    for (std::size_t r = 0; r < m; ++r) B(r, i) = piv[r];
    index_valuation += best_v;
  }
  return B;
}

}  // namespace

const std::vector<NewformClass>& newform_classes(u64 N, int k, u64 table_bound) {
  static std::mutex mu;
  static std::map<std::tuple<u64, int, u64>, std::shared_ptr<std::vector<NewformClass>>> memo;
  const u64 bound = table_bound ? table_bound : default_table_bound(N, k);
  const auto key = std::make_tuple(N, k, bound);
  {
    std::lock_guard lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return *it->second;
  }
  auto result = std::make_shared<std::vector<NewformClass>>(compute_classes(N, k, bound));
  std::lock_guard lock(mu);
  auto [it, inserted] = memo.emplace(key, std::move(result));
  return *it->second;
}

std::vector<EigenSystem> class_reductions(const NewformClass& c, u64 ell) {
  if (!is_prime(ell)) throw DomainError("reduction characteristic is not prime");
  std::vector<std::pair<u64, const QMatrix*>> ops;
  for (const auto& [q, A] : c.operators)
    if (q != ell) ops.emplace_back(q, &A);
  if (ops.empty()) throw DomainError("no Hecke operators available for reduction");
  const std::size_t m = ops[0].second->rows();

  QMatrix L = QMatrix::identity(QF{}, m);
  long index = 0;
  while (true) {
    QMatrix G = L;
    for (auto& [q, A] : ops) G = hstack(G, mat_mul(*A, L));
    long next_index;
    QMatrix next = lattice_basis(G, ell, next_index);
    bool stable = next_index == index;
    L = std::move(next);
    index = next_index;
    if (stable) break;
  }

  PrimeField K(ell);
  HeckeOperators reduced;
  for (auto& [q, A] : ops) {
    QMatrix X = solve_columns(L, mat_mul(*A, L));
    Matrix<PrimeField> R(K, m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) R(i, j) = reduce_rational(X(i, j), ell);
    reduced.emplace_back(q, std::move(R));
  }
  auto systems = decompose_operators(K, reduced, c.level, c.weight, c.bound);
  for (auto& s : systems) s.is_new = true;
  return systems;
}

std::string resolve_alias(const std::string& label) {
  if (label == "delta") return "1.12.0";
  if (label == "f11") return "11.2.0";
  return label;
}

const NewformClass& find_class(const std::string& label, u64 table_bound) {
  const std::string resolved = resolve_alias(label);
  std::istringstream in(resolved);
  u64 N = 0;
  int k = 0, idx = -1;
  char d1 = 0, d2 = 0;
  if (!(in >> N >> d1 >> k >> d2 >> idx) || d1 != '.' || d2 != '.' || !in.eof())
    throw DomainError("malformed class label '" + label + "' (expected N.k.index)");
  if (k % 2 != 0 || k < 2 || k > 12 || N < 1) throw DomainError("class label '" + label + "' has unsupported level or weight");
  const auto& classes = newform_classes(N, k, table_bound);
  if (idx < 0 || static_cast<std::size_t>(idx) >= classes.size())
    throw DomainError("unknown class label '" + label + "'");
  return classes[idx];
}

}  // namespace cchain
