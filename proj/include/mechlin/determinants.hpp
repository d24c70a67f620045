#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mechlin/factor/block.hpp"
#include "mechlin/factor/turing.hpp"
#include "mechlin/scalar/symexpr.hpp"

namespace mechlin {

namespace detail {

// Expansion along `row` over the columns still present in `cols`.
template <Ring S>
S laplace_rec(const Matrix<S>& a, std::size_t row, std::vector<std::size_t>& cols) {
  if (cols.size() == 1) return a(row, cols[0]);
  S total(0);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    const S& entry = a(row, c);
    if (is_zero(entry)) continue;
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    S minor = laplace_rec(a, row + 1, cols);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    S term = entry * minor;
    total = (k % 2 == 0) ? total + term : total - term;
  }
  return total;
}

}  // namespace detail

/// Cofactor expansion along the first row, recursively. Any commutative ring.
template <Ring S>
S det_laplace(const Matrix<S>& a) {
  require_square(a, "det_laplace");
  std::vector<std::size_t> cols(a.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return detail::laplace_rec(a, 0, cols);
}

/// det A = det A11 * det(A22 - A21 A11^-1 A12), split at floor(n/2). Rows
/// are reordered first (by elimination on the leading columns, first nonzero
/// pivot in column order) so that A11 is nonsingular; if the leading
/// columns are dependent the determinant is zero.
template <Field S>
S det_schur(const Matrix<S>& a) {
  require_square(a, "det_schur");
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  const std::size_t k = n / 2;
  auto f = plu(a.block(0, 0, n, k), Pivoting::partial);
  for (std::size_t i = 0; i < k; ++i)
    if (is_zero(f.U(i, i))) return S(0);
  Matrix<S> pa = permute_rows(a, f.row_perm);
  S sign(permutation_sign(f.row_perm));
  BlockPartition p{k, k};
  S d11 = det_schur(pa.block(0, 0, k, k));
  S d22 = det_schur(schur_complement(pa, p));
  return sign * d11 * d22;
}

/// Signed product of the Turing pivots.
template <Field S>
  requires is_exact_v<S>
S det_turing(const Matrix<S>& a) {
  require_square(a, "det_turing");
  return turing(a).det();
}

template <Ring S>
S det2x2(const Matrix<S>& a) {
  if (a.rows() != 2 || a.cols() != 2)
    throw Error(ErrorCode::ShapeMismatch, "expected a 2x2 matrix", {{"shape", shape_string(a.rows(), a.cols())}});
  return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

/// (1/(ad-bc)) [[d,-b],[-c,a]]
template <Field S>
Matrix<S> inv2x2(const Matrix<S>& a) {
  const S d = det2x2(a);
  if (is_zero(d)) throw Error(ErrorCode::Singular, "2x2 matrix is singular", {{"det", "0"}});
  return Matrix<S>{{a(1, 1) / d, -a(0, 1) / d}, {-a(1, 0) / d, a(0, 0) / d}};
}

/// A^-1 from the Turing factors: P A = L D U, so A^-1 = U^-1 D^-1 L^-1 P.
/// The result is checked against A X = I before it is returned.
template <Field S>
  requires is_exact_v<S>
Matrix<S> inverse_exact(const Matrix<S>& a) {
  require_square(a, "inverse_exact");
  const std::size_t n = a.rows();
  auto t = turing(a);
  if (t.rank < n)
    throw Error(ErrorCode::Singular, "matrix is singular", {{"rank", std::to_string(t.rank)}, {"n", std::to_string(n)}});
  Matrix<S> y = solve_unit_lower(t.L, permutation_matrix<S>(t.row_perm));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y(i, j) = y(i, j) / t.D(i, i);
  Matrix<S> x = solve_upper(t.U, y);
  if (!(a * x == Matrix<S>::identity(n)))
    throw Error(ErrorCode::ConstructionError, "inverse failed verification");
  return x;
}

/// x_i = det(A_i) / det(A) with A_i = A with column i replaced by b.
template <Field S>
  requires is_exact_v<S>
Matrix<S> cramer_solve(const Matrix<S>& a, const Matrix<S>& b) {
  require_square(a, "cramer_solve");
  if (b.rows() != a.rows() || b.cols() != 1)
    throw Error(ErrorCode::ShapeMismatch, "right-hand side must be a column with one entry per row of A",
                {{"A", shape_string(a.rows(), a.cols())}, {"b", shape_string(b.rows(), b.cols())}});
  const S d = det_turing(a);
  if (is_zero(d)) throw Error(ErrorCode::Singular, "Cramer's rule needs det(A) != 0", {{"det", "0"}});
  Matrix<S> x(a.rows(), 1);
  for (std::size_t i = 0; i < a.cols(); ++i) {
    Matrix<S> ai = a;
    ai.set_block(0, i, b);
    x(i, 0) = det_turing(ai) / d;
  }
  return x;
}

/// The n x n matrix of distinct symbols a11, a12, ...
inline Matrix<SymExpr> symbolic_matrix(std::size_t n, const std::string& stem = "a") {
  Matrix<SymExpr> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = SymExpr::symbol(stem + std::to_string(i + 1) + std::to_string(j + 1));
  return m;
}

struct SymbolicDet {
  SymExpr det;
  std::size_t terms = 0;
};

/// Determinant of the fully symbolic n x n matrix; it has n! terms.
inline SymbolicDet symbolic_det_termcount(int n) {
  if (n < 1 || n > 5)
    throw Error(ErrorCode::OutOfRange, "symbolic determinant is limited to 1 <= n <= 5", {{"n", std::to_string(n)}});
  SymExpr d = det_laplace(symbolic_matrix(static_cast<std::size_t>(n)));
  std::size_t count = d.term_count();
  return {std::move(d), count};
}

}  // namespace mechlin
