#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cchain/arith/poly.hpp"
#include "cchain/core/error.hpp"

namespace cchain {

/// Dense row-major matrix over a field K (PrimeField, FiniteField or RationalField).
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() = default;
  Matrix(const F& K, std::size_t rows, std::size_t cols)
      : K_(K), rows_(rows), cols_(cols), data_(rows * cols, K.zero()) {}

  static Matrix identity(const F& K, std::size_t n) {
    Matrix m(K, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K.one();
    return m;
  }

  const F& field() const { return K_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Elem> column(std::size_t j) const {
    std::vector<Elem> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<Elem> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!K_.is_zero(x)) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!K_.equal(data_[i], o.data_[i])) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  F K_{};
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

template <class F>
Matrix<F> mat_mul(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
  const F& K = a.field();
  Matrix<F> c(K, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& x = a(i, k);
      if (K.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = K.add(c(i, j), K.mul(x, b(k, j)));
    }
  return c;
}

template <class F>
Matrix<F> mat_add(const Matrix<F>& a, const Matrix<F>& b) {
  const F& K = a.field();
  Matrix<F> c(K, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = K.add(a(i, j), b(i, j));
  return c;
}

template <class F>
Matrix<F> mat_sub(const Matrix<F>& a, const Matrix<F>& b) {
  const F& K = a.field();
  Matrix<F> c(K, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = K.sub(a(i, j), b(i, j));
  return c;
}

template <class F>
Matrix<F> mat_scale(const Matrix<F>& a, const typename F::Elem& s) {
  const F& K = a.field();
  Matrix<F> c(K, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = K.mul(a(i, j), s);
  return c;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
  Matrix<F> t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Columns of a and b side by side.
template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw DomainError("hstack row mismatch");
  Matrix<F> c(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

template <class F>
struct Echelon {
  Matrix<F> reduced;               // reduced row echelon form, pivots equal to one
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination; the result is unique for the row space, hence reproducible.
template <class F>
Echelon<F> rref(Matrix<F> m) {
  const F& K = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && K.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    auto inv = K.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = K.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || K.is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = K.sub(m(i, j), K.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// Right null space as columns. Column j is the unique kernel vector equal to the
/// j-th unit vector on the free coordinates, which makes the basis canonical.
template <class F>
Matrix<F> kernel(const Matrix<F>& m) {
  const F& K = m.field();
  auto [R, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<F> basis(K, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    basis(free_cols[j], j) = K.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], j) = K.neg(R(i, free_cols[j]));
  }
  return basis;
}

/// Canonical basis of the column space: transposed nonzero rows of rref(m^T).
template <class F>
Matrix<F> column_space(const Matrix<F>& m) {
  auto e = rref(transpose(m));
  Matrix<F> basis(m.field(), m.rows(), e.pivots.size());
  for (std::size_t j = 0; j < e.pivots.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) basis(i, j) = e.reduced(j, i);
  return basis;
}

/// X with B X = C, for B of full column rank whose column span contains the columns of C.
template <class F>
Matrix<F> solve_columns(const Matrix<F>& B, const Matrix<F>& C) {
  const F& K = B.field();
  auto [R, pivots] = rref(hstack(B, C));
  const std::size_t m = B.cols();
  if (pivots.size() < m || (pivots.size() > m) || (m > 0 && pivots[m - 1] != m - 1))
    throw DomainError("linear system has no unique solution");
  Matrix<F> X(K, m, C.cols());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < C.cols(); ++j) X(i, j) = R(i, m + j);
  return X;
}

/// Matrix of A restricted to the A-stable span of the columns of B.
template <class F>
Matrix<F> restrict_to(const Matrix<F>& A, const Matrix<F>& B) {
  return solve_columns(B, mat_mul(A, B));
}

/// Characteristic polynomial det(xI - A) via Hessenberg reduction.
template <class F>
Poly<F> charpoly(const Matrix<F>& A) {
  if (!A.square()) throw DomainError("charpoly of a non-square matrix");
  const F& K = A.field();
  const std::size_t n = A.rows();
  Matrix<F> H = A;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t i = j + 1;
    while (i < n && K.is_zero(H(i, j))) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      H.swap_rows(i, j + 1);
      for (std::size_t r = 0; r < n; ++r) std::swap(H(r, i), H(r, j + 1));
    }
    auto t_inv = K.inv(H(j + 1, j));
    for (std::size_t r = j + 2; r < n; ++r) {
      if (K.is_zero(H(r, j))) continue;
      auto u = K.mul(H(r, j), t_inv);
      for (std::size_t c = 0; c < n; ++c) H(r, c) = K.sub(H(r, c), K.mul(u, H(j + 1, c)));
      for (std::size_t c = 0; c < n; ++c) H(c, j + 1) = K.add(H(c, j + 1), K.mul(u, H(c, r)));
    }
  }
  std::vector<Poly<F>> p(n + 1);
  p[0] = poly_const(K, K.one());
  for (std::size_t m = 0; m < n; ++m) {
    p[m + 1] = poly_mul(K, poly_linear(K, H(m, m)), p[m]);
    auto prod = K.one();
    for (std::size_t i = m; i-- > 0;) {
      prod = K.mul(prod, H(i + 1, i));
      auto coef = K.mul(H(i, m), prod);
      p[m + 1] = poly_sub(K, p[m + 1], poly_scale(K, p[i], coef));
    }
  }
  return p[n];
}

/// f(A) by Horner's rule.
template <class F>
Matrix<F> poly_eval_matrix(const Poly<F>& f, const Matrix<F>& A) {
  const F& K = A.field();
  Matrix<F> acc(K, A.rows(), A.cols());
  const auto I = Matrix<F>::identity(K, A.rows());
  for (std::size_t i = f.size(); i-- > 0;) acc = mat_add(mat_mul(acc, A), mat_scale(I, f[i]));
  return acc;
}

}  // namespace cchain
