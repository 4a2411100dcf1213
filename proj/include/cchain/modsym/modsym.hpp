#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cchain/arith/field.hpp"
#include "cchain/arith/matrix.hpp"
#include "cchain/arith/rational.hpp"
#include "cchain/modsym/p1.hpp"

namespace cchain {

/// Weight-k modular symbols for Gamma0(N) over a field K, presented by Manin symbols
/// (c:d) x X^i Y^(k-2-i) modulo the two- and three-term relations.
template <class F>
class ModSymSpace {
 public:
  using Elem = typename F::Elem;
  using Sparse = std::vector<std::pair<std::uint32_t, Elem>>;

  ModSymSpace(const F& K, u64 N, int k);

  const F& field() const { return K_; }
  u64 level() const { return N_; }
  int weight() const { return k_; }
  u64 characteristic() const { return K_.characteristic(); }

  std::size_t manin_count() const { return p1_.size() * static_cast<std::size_t>(k_ - 1); }
  std::size_t dimension() const { return basis_gens_.size(); }
  std::size_t cuspidal_dim() const { return cusp_basis_.cols(); }

  /// Boundary map to the space of cusps, one row per cusp class.
  const Matrix<F>& boundary_map() const { return boundary_; }
  /// Columns spanning the kernel of the boundary map, in canonical echelon form.
  const Matrix<F>& cuspidal_basis() const { return cusp_basis_; }

  /// T_q on the whole modular-symbol space; OpenMP-parallel over basis columns.
  Matrix<F> hecke_full(u64 q) const;
  /// Serial reference for hecke_full; identical output.
  Matrix<F> hecke_full_serial(u64 q) const;
  /// T_q on the cuspidal subspace in the canonical cuspidal basis (memoized).
  const Matrix<F>& hecke_cuspidal(u64 q) const;

 private:
  void impose_relations();
  void compute_boundary();
  /// Adds coef * (gen acted on by m) to acc, written in the quotient basis.
  void act_into(std::size_t gen, const IntMatrix2& m, const Elem& coef, std::vector<Elem>& acc) const;
  std::vector<Elem> hecke_column(std::size_t j, const std::vector<IntMatrix2>& heil) const;
  /// Images of one Manin symbol under a matrix, as raw (generator, coefficient) terms.
  void act_raw(std::size_t gen, const IntMatrix2& m, std::vector<std::pair<std::size_t, Elem>>& out) const;

  F K_;
  u64 N_;
  int k_;
  P1List p1_;
  std::vector<std::size_t> basis_gens_;  // generators surviving as basis elements
  std::vector<Sparse> reduce_;           // each generator written in the basis
  Matrix<F> boundary_;
  Matrix<F> cusp_basis_;

  struct Cache {
    std::mutex mutex;
    std::map<u64, std::shared_ptr<const Matrix<F>>> hecke;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Space over F_ell with the working-characteristic constraints enforced:
/// N >= 1, k even in [2, 12], ell prime, ell not dividing 6N, ell > k - 2.
ModSymSpace<PrimeField> build_space(u64 N, int k, u64 ell);

/// The same presentation over Q (no characteristic constraints).
ModSymSpace<RationalField> build_rational_space(u64 N, int k);

/// Validates (N, k, ell) without building anything; throws DomainError naming the rule.
void check_space_parameters(u64 N, int k, u64 ell);

extern template class ModSymSpace<PrimeField>;
extern template class ModSymSpace<RationalField>;

}  // namespace cchain
