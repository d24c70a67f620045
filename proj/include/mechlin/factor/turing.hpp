#pragma once

#include <vector>

#include "mechlin/factor/lu.hpp"

namespace mechlin {

/// P*A = L*D*U*R for any m x n A. L (unit lower), D (diagonal) and U (unit
/// upper) are m x m and invertible; R is the reduced row echelon form of A.
/// D holds the pivots in its first `rank` slots and 1 elsewhere.
template <Field S>
struct TuringFactors {
  Permutation row_perm;
  Matrix<S> L;
  Matrix<S> D;
  Matrix<S> U;
  Matrix<S> R;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;

  /// Determinant of a square A: sign(P) times the product of the pivots,
  /// or zero when A is rank deficient.
  S det() const {
    require_square(R, "det");
    if (rank < R.rows()) return S(0);
    S d(permutation_sign(row_perm));
    for (std::size_t i = 0; i < rank; ++i) d = d * D(i, i);
    return d;
  }
};

/// Turing factoring by three passes: elimination with row exchanges gives
/// P*A = L*E with E in row echelon form; scaling pivot rows gives E = D*V;
/// clearing above each pivot gives V = U*R.
template <Field S>
  requires is_exact_v<S>
TuringFactors<S> turing(const Matrix<S>& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<S> e = a;
  Matrix<S> l = Matrix<S>::identity(m);
  Permutation rp = identity_permutation(m);
  std::vector<std::size_t> pivots;

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t pr = detail::column_pivot(e, r, c);
    if (pr == m) continue;
    if (pr != r) {
      e.swap_rows(pr, r);
      std::swap(rp[pr], rp[r]);
      for (std::size_t j = 0; j < r; ++j) std::swap(l(pr, j), l(r, j));
    }
    const S pivot = e(r, c);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (is_zero(e(i, c))) continue;
      S f = e(i, c) / pivot;
      l(i, r) = f;
      e(i, c) = S(0);
      for (std::size_t j = c + 1; j < n; ++j) e(i, j) = e(i, j) - f * e(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  const std::size_t rank = pivots.size();

  Matrix<S> d = Matrix<S>::identity(m);
  for (std::size_t k = 0; k < rank; ++k) {
    const S p = e(k, pivots[k]);
    d(k, k) = p;
    for (std::size_t j = pivots[k]; j < n; ++j) e(k, j) = e(k, j) / p;
  }

  Matrix<S> u = Matrix<S>::identity(m);
  for (std::size_t k = rank; k-- > 0;) {
    const std::size_t pc = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      const S f = e(i, pc);
      if (is_zero(f)) continue;
      u(i, k) = f;
      for (std::size_t j = pc; j < n; ++j) e(i, j) = e(i, j) - f * e(k, j);
    }
  }

  return {std::move(rp), std::move(l), std::move(d), std::move(u), std::move(e), rank, std::move(pivots)};
}

template <Field S>
  requires is_exact_v<S>
Matrix<S> rref(const Matrix<S>& a) {
  return turing(a).R;
}

template <Field S>
  requires is_exact_v<S>
std::size_t rank(const Matrix<S>& a) {
  return turing(a).rank;
}

}  // namespace mechlin
