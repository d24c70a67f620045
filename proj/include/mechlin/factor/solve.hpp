#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mechlin/factor/lu.hpp"
#include "mechlin/factor/qr.hpp"
#include "mechlin/factor/turing.hpp"
#include "mechlin/numeric/svd.hpp"

namespace mechlin {

enum class SolveMethod { lu, turing };
enum class SolutionKind { unique, family, inconsistent };

/// Outcome of A x = b. For `family`, every solution is x plus a combination
/// of the nullspace columns. For `inconsistent`, witness is the row of the
/// reduced augmented matrix [R | c] reading 0 ... 0 | nonzero.
template <Field S>
struct Solution {
  SolutionKind kind = SolutionKind::unique;
  std::optional<Matrix<S>> x;
  std::vector<Matrix<S>> nullspace;
  std::optional<Matrix<S>> witness;
  std::size_t witness_row = 0;  // 0-based row of [R | c]
  std::size_t rank = 0;
};

template <Ring S>
void require_rhs(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || b.cols() != 1)
    throw Error(ErrorCode::ShapeMismatch, "right-hand side must be a column with one entry per row of A",
                {{"A", shape_string(a.rows(), a.cols())}, {"b", shape_string(b.rows(), b.cols())}});
}

namespace detail {

template <Field S>
Solution<S> solve_by_turing(const Matrix<S>& a, const Matrix<S>& b) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<S> aug(m, n + 1);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  auto t = turing(aug);
  Solution<S> s;
  for (std::size_t k = 0; k < t.rank; ++k) {
    if (t.pivot_cols[k] == n) {
      s.kind = SolutionKind::inconsistent;
      s.witness = t.R.row(k);
      s.witness_row = k;
      s.rank = k;
      return s;
    }
  }
  s.rank = t.rank;
  Matrix<S> x(n, 1);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < t.rank; ++k) {
    x(t.pivot_cols[k], 0) = t.R(k, n);
    is_pivot[t.pivot_cols[k]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Matrix<S> v(n, 1);
    v(f, 0) = S(1);
    for (std::size_t k = 0; k < t.rank; ++k) v(t.pivot_cols[k], 0) = -t.R(k, f);
    s.nullspace.push_back(std::move(v));
  }
  s.kind = s.nullspace.empty() ? SolutionKind::unique : SolutionKind::family;
  s.x = std::move(x);
  return s;
}

}  // namespace detail

/// Solves A x = b exactly. The lu method factors a square A with partial
/// pivoting and falls back to the Turing analysis when A is singular or
/// not square, so both methods describe the same solution set.
template <Field S>
  requires is_exact_v<S>
Solution<S> solve(const Matrix<S>& a, const Matrix<S>& b, SolveMethod method = SolveMethod::lu) {
  require_rhs(a, b);
  if (method == SolveMethod::lu && a.is_square()) {
    auto f = plu(a, Pivoting::partial);
    bool nonsingular = true;
    for (std::size_t k = 0; k < f.U.rows(); ++k)
      if (is_zero(f.U(k, k))) nonsingular = false;
    if (nonsingular) {
      Solution<S> s;
      s.x = lu_solve(f, b);
      s.rank = a.rows();
      return s;
    }
  }
  return detail::solve_by_turing(a, b);
}

template <Ring S>
struct LstsqResult {
  Matrix<S> x;
  double residual_norm = 0.0;
};

template <Ring S>
struct Projection {
  Matrix<S> p;
  double residual_norm = 0.0;
};

namespace detail {

template <Ring S>
double residual_norm(const Matrix<S>& a, const Matrix<S>& x, const Matrix<S>& b) {
  Matrix<S> r = b - a * x;
  double s = 0.0;
  for (const auto& v : r.data()) s += std::norm(to_complex(v));
  return std::sqrt(s);
}

template <Field S>
Matrix<S> adjoint(const Matrix<S>& a) {
  if constexpr (Conjugable<S>)
    return a.conjugate_transpose();
  else
    return a.transpose();
}

}  // namespace detail

/// Exact least squares from the normal equations A^H A x = A^H b.
template <Field S>
  requires is_exact_v<S>
LstsqResult<S> lstsq(const Matrix<S>& a, const Matrix<S>& b) {
  require_rhs(a, b);
  auto t = turing(a);
  if (t.rank < a.cols())
    throw Error(ErrorCode::RankDeficient, "least squares needs full column rank",
                {{"rank", std::to_string(t.rank)}, {"cols", std::to_string(a.cols())}});
  Matrix<S> ah = detail::adjoint(a);
  auto f = plu(Matrix<S>(ah * a), Pivoting::partial);
  Matrix<S> x = lu_solve(f, Matrix<S>(ah * b));
  double r = detail::residual_norm(a, x, b);
  return {std::move(x), r};
}

/// Double least squares: Householder QR when A has numerically full column
/// rank, otherwise the minimum-norm solution from the SVD.
inline LstsqResult<double> lstsq(const Matrix<double>& a, const Matrix<double>& b) {
  require_rhs(a, b);
  const std::size_t n = a.cols();
  if (a.rows() >= n && numeric_rank(a) == n) {
    auto f = qr_householder(a);
    Matrix<double> qtb = f.Q.transpose() * b;
    Matrix<double> x = solve_upper(f.R, qtb);
    double r = detail::residual_norm(a, x, b);
    return {std::move(x), r};
  }
  auto s = svd_jacobi(a);
  Matrix<double> x(n, 1);
  const double cut = s.sigma.empty() ? 0.0 : 1e-8 * s.sigma.front();
  for (std::size_t k = 0; k < s.sigma.size(); ++k) {
    if (!(s.sigma[k] > cut)) continue;
    double coef = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) coef += s.U(i, k) * b(i, 0);
    coef /= s.sigma[k];
    for (std::size_t j = 0; j < n; ++j) x(j, 0) += coef * s.V(j, k);
  }
  double r = detail::residual_norm(a, x, b);
  return {std::move(x), r};
}

/// Orthogonal projection of b onto the column space of A (any rank). The
/// exact path keeps only the pivot columns, which form a basis.
template <Field S>
  requires is_exact_v<S>
Projection<S> project_colspace(const Matrix<S>& a, const Matrix<S>& b) {
  require_rhs(a, b);
  auto t = turing(a);
  if (t.rank == 0) {
    Matrix<S> zero(b.rows(), 1);
    return {zero, detail::residual_norm(Matrix<S>(b.rows(), 1), Matrix<S>(1, 1), b)};
  }
  Matrix<S> basis(a.rows(), t.rank);
  for (std::size_t k = 0; k < t.rank; ++k) basis.set_block(0, k, a.col(t.pivot_cols[k]));
  auto ls = lstsq(basis, b);
  return {basis * ls.x, ls.residual_norm};
}

inline Projection<double> project_colspace(const Matrix<double>& a, const Matrix<double>& b) {
  require_rhs(a, b);
  auto s = svd_jacobi(a);
  Matrix<double> p(b.rows(), 1);
  const double cut = s.sigma.empty() ? 0.0 : 1e-8 * s.sigma.front();
  for (std::size_t k = 0; k < s.sigma.size(); ++k) {
    if (!(s.sigma[k] > cut)) continue;
    double coef = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i) coef += s.U(i, k) * b(i, 0);
    for (std::size_t i = 0; i < b.rows(); ++i) p(i, 0) += coef * s.U(i, k);
  }
  double r = 0.0;
  for (std::size_t i = 0; i < b.rows(); ++i) r = std::hypot(r, b(i, 0) - p(i, 0));
  return {std::move(p), r};
}

}  // namespace mechlin
