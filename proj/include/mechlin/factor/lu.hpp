#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mechlin/factor/permutation.hpp"

namespace mechlin {

enum class Pivoting { none, partial, complete, rook };

/// P*A*Q = L*U with L unit lower triangular (m x m) and U upper
/// trapezoidal (m x n). Q is present only for complete and rook pivoting.
template <Field S>
struct PLUFactors {
  Permutation row_perm;
  Matrix<S> L;
  Matrix<S> U;
  std::optional<Permutation> col_perm;

  /// P*A*Q rebuilt from the permutations, for reassembly checks.
  Matrix<S> permuted(const Matrix<S>& a) const {
    Matrix<S> pa = permute_rows(a, row_perm);
    return col_perm ? permute_cols(pa, *col_perm) : pa;
  }
};

namespace detail {

template <Field S>
bool weight_greater(const S& a, const S& b) {
  return pivot_weight(a) > pivot_weight(b);
}

/// Row index in [from, rows) of the pivot for column c: max magnitude for
/// floating scalars, first nonzero for exact ones. Returns rows if the
/// column is zero there.
template <Field S>
std::size_t column_pivot(const Matrix<S>& u, std::size_t from, std::size_t c) {
  std::size_t best = u.rows();
  for (std::size_t r = from; r < u.rows(); ++r) {
    if (is_zero(u(r, c))) continue;
    if constexpr (is_exact_v<S>) {
      return r;
    } else {
      if (best == u.rows() || weight_greater(u(r, c), u(best, c))) best = r;
    }
  }
  return best;
}

template <Field S>
std::size_t max_in_column(const Matrix<S>& u, std::size_t from, std::size_t c) {
  std::size_t best = u.rows();
  for (std::size_t r = from; r < u.rows(); ++r) {
    if (is_zero(u(r, c))) continue;
    if (best == u.rows() || weight_greater(u(r, c), u(best, c))) best = r;
  }
  return best;
}

template <Field S>
std::size_t max_in_row(const Matrix<S>& u, std::size_t r, std::size_t from) {
  std::size_t best = u.cols();
  for (std::size_t c = from; c < u.cols(); ++c) {
    if (is_zero(u(r, c))) continue;
    if (best == u.cols() || weight_greater(u(r, c), u(r, best))) best = c;
  }
  return best;
}

/// Pivot over the trailing submatrix for complete pivoting.
template <Field S>
std::optional<std::pair<std::size_t, std::size_t>> complete_pivot(const Matrix<S>& u, std::size_t k) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t r = k; r < u.rows(); ++r) {
    for (std::size_t c = k; c < u.cols(); ++c) {
      if (is_zero(u(r, c))) continue;
      if constexpr (Weighted<S>) {
        if (!best || weight_greater(u(r, c), u(best->first, best->second))) best = {{r, c}};
      } else {
        return std::make_pair(r, c);
      }
    }
  }
  return best;
}

/// Rook pivoting: alternate column and row maxima until the entry is
/// maximal in both its row and its column.
template <Field S>
std::optional<std::pair<std::size_t, std::size_t>> rook_pivot(const Matrix<S>& u, std::size_t k) {
  if constexpr (!Weighted<S>) {
    return complete_pivot(u, k);
  } else {
    // Start from the first column that has a nonzero entry.
    std::size_t c = k;
    std::size_t r = u.rows();
    for (; c < u.cols(); ++c) {
      r = max_in_column(u, k, c);
      if (r != u.rows()) break;
    }
    if (c == u.cols()) return std::nullopt;
    const std::size_t cap = u.rows() * u.cols();
    for (std::size_t step = 0;; ++step) {
      if (step > cap) throw Error(ErrorCode::NonConvergence, "rook pivot search did not settle");
      std::size_t c2 = max_in_row(u, r, k);
      if (!weight_greater(u(r, c2), u(r, c))) break;
      c = c2;
      std::size_t r2 = max_in_column(u, k, c);
      if (!weight_greater(u(r2, c), u(r, c))) break;
      r = r2;
    }
    return std::make_pair(r, c);
  }
}

}  // namespace detail

/// LU factoring with the requested pivoting. For exact scalars "partial"
/// takes the first nonzero entry of the column; for floating scalars the
/// largest in magnitude. Complete and rook pivoting compare magnitudes
/// whenever the scalar has one.
template <Field S>
PLUFactors<S> plu(const Matrix<S>& a, Pivoting pivoting = Pivoting::partial) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<S> u = a;
  Matrix<S> l = Matrix<S>::identity(m);
  Permutation rp = identity_permutation(m);
  Permutation cp = identity_permutation(n);
  const std::size_t steps = std::min(m, n);

  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pr = k, pc = k;
    switch (pivoting) {
      case Pivoting::none:
        if (is_zero(u(k, k))) {
          if (k + 1 < m) {
            throw Error(ErrorCode::ZeroPivot, "zero pivot without pivoting at step " + std::to_string(k + 1),
                        {{"k", std::to_string(k + 1)}});
          }
          continue;
        }
        break;
      case Pivoting::partial:
        pr = detail::column_pivot(u, k, k);
        if (pr == m) continue;
        break;
      case Pivoting::complete:
      case Pivoting::rook: {
        auto p = pivoting == Pivoting::complete ? detail::complete_pivot(u, k) : detail::rook_pivot(u, k);
        if (!p) {
          k = steps;
          continue;
        }
        pr = p->first;
        pc = p->second;
        break;
      }
    }
    if (pr != k) {
      u.swap_rows(pr, k);
      std::swap(rp[pr], rp[k]);
      for (std::size_t j = 0; j < k; ++j) std::swap(l(pr, j), l(k, j));
    }
    if (pc != k) {
      u.swap_cols(pc, k);
      std::swap(cp[pc], cp[k]);
    }
    const S pivot = u(k, k);
    for (std::size_t i = k + 1; i < m; ++i) {
      if (is_zero(u(i, k))) continue;
      S f = u(i, k) / pivot;
      l(i, k) = f;
      u(i, k) = S(0);
      for (std::size_t j = k + 1; j < n; ++j) u(i, j) = u(i, j) - f * u(k, j);
    }
  }

  PLUFactors<S> out{std::move(rp), std::move(l), std::move(u), std::nullopt};
  if (pivoting == Pivoting::complete || pivoting == Pivoting::rook) out.col_perm = std::move(cp);
  return out;
}

/// True iff the leading principal minors of orders 1..n-1 are all nonzero,
/// i.e. elimination without row exchanges never meets a zero pivot.
template <Field S>
bool lu_no_pivot_feasible(const Matrix<S>& a) {
  require_square(a, "lu_no_pivot_feasible");
  const std::size_t n = a.rows();
  // Pivot k of unpivoted elimination is minor_k / minor_{k-1}, so it is
  // enough to run elimination and watch the first n-1 pivots.
  Matrix<S> u = a;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(u(k, k))) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      S f = u(i, k) / u(k, k);
      for (std::size_t j = k; j < n; ++j) u(i, j) = u(i, j) - f * u(k, j);
    }
  }
  return true;
}

/// Solves L*X = B for unit lower triangular L.
template <Field S>
Matrix<S> solve_unit_lower(const Matrix<S>& l, const Matrix<S>& b) {
  Matrix<S> x = b;
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t k = 0; k < i; ++k) {
      if (is_zero(l(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = x(i, j) - l(i, k) * x(k, j);
    }
  return x;
}

/// Solves U*X = B for square upper triangular U with nonzero diagonal.
template <Field S>
Matrix<S> solve_upper(const Matrix<S>& u, const Matrix<S>& b) {
  const std::size_t n = u.rows();
  Matrix<S> x = b;
  for (std::size_t i = n; i-- > 0;) {
    if (is_zero(u(i, i))) throw Error(ErrorCode::Singular, "zero diagonal in triangular solve");
    for (std::size_t j = 0; j < b.cols(); ++j) {
      S acc = x(i, j);
      for (std::size_t k = i + 1; k < n; ++k) acc = acc - u(i, k) * x(k, j);
      x(i, j) = acc / u(i, i);
    }
  }
  return x;
}

/// Solves A*X = B using existing PLU factors of a square nonsingular A.
template <Field S>
Matrix<S> lu_solve(const PLUFactors<S>& f, const Matrix<S>& b) {
  if (b.rows() != f.L.rows())
    throw Error(ErrorCode::ShapeMismatch, "right-hand side rows differ",
                {{"left", shape_string(f.L.rows(), f.U.cols())}, {"right", shape_string(b.rows(), b.cols())}});
  Matrix<S> y = solve_unit_lower(f.L, permute_rows(b, f.row_perm));
  Matrix<S> z = solve_upper(f.U, y);
  if (!f.col_perm) return z;
  Matrix<S> x(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) x((*f.col_perm)[i], j) = z(i, j);
  return x;
}

}  // namespace mechlin
