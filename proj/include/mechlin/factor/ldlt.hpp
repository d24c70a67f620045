#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mechlin/matrix.hpp"

namespace mechlin {

/// A = L * diag(d) * L^T with L unit lower triangular.
template <Field S>
struct LDLTFactors {
  Matrix<S> L;
  std::vector<S> d;

  Matrix<S> D() const { return Matrix<S>::diagonal(d); }
};

template <Ring S>
bool is_symmetric(const Matrix<S>& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!(a(i, j) == a(j, i))) return false;
  return true;
}

namespace detail {

// Factor the leading scalar, form the order-(n-1) Schur complement, recurse.
// `offset` is the position of the current block inside the original matrix.
template <Field S>
void ldlt_step(const Matrix<S>& a, std::size_t offset, Matrix<S>& l, std::vector<S>& d) {
  const std::size_t n = a.rows();
  const S alpha = a(0, 0);
  if (is_zero(alpha))
    throw Error(ErrorCode::ZeroPivot, "zero pivot in LDL^T at step " + std::to_string(offset + 1),
                {{"k", std::to_string(offset + 1)}});
  d[offset] = alpha;
  if (n == 1) return;
  Matrix<S> schur(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    l(offset + i, offset) = a(i, 0) / alpha;
    for (std::size_t j = 1; j < n; ++j) schur(i - 1, j - 1) = a(i, j) - a(i, 0) * a(0, j) / alpha;
  }
  ldlt_step(schur, offset + 1, l, d);
}

inline void cholesky_step(const Matrix<double>& a, std::size_t offset, Matrix<double>& l) {
  const std::size_t n = a.rows();
  const double alpha = a(0, 0);
  if (!(alpha > 0.0))
    throw Error(ErrorCode::NotPositiveDefinite, "nonpositive pivot at step " + std::to_string(offset + 1),
                {{"k", std::to_string(offset + 1)}});
  const double root = std::sqrt(alpha);
  l(offset, offset) = root;
  if (n == 1) return;
  Matrix<double> schur(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    l(offset + i, offset) = a(i, 0) / root;
    for (std::size_t j = 1; j < n; ++j) schur(i - 1, j - 1) = a(i, j) - a(i, 0) * a(0, j) / alpha;
  }
  cholesky_step(schur, offset + 1, l);
}

}  // namespace detail

/// Exact LDL^T of a symmetric matrix by recursion on Schur complements.
template <Field S>
  requires is_exact_v<S>
LDLTFactors<S> ldlt(const Matrix<S>& a) {
  require_square(a, "ldlt");
  if (!is_symmetric(a)) throw Error(ErrorCode::NotSymmetric, "LDL^T needs a symmetric matrix");
  LDLTFactors<S> f{Matrix<S>::identity(a.rows()), std::vector<S>(a.rows(), S(0))};
  detail::ldlt_step(a, 0, f.L, f.d);
  return f;
}

/// Lower triangular L with A = L*L^T, for symmetric positive definite A.
inline Matrix<double> cholesky(const Matrix<double>& a) {
  require_square(a, "cholesky");
  if (!is_symmetric(a)) throw Error(ErrorCode::NotSymmetric, "Cholesky needs a symmetric matrix");
  Matrix<double> l(a.rows(), a.cols());
  detail::cholesky_step(a, 0, l);
  return l;
}

}  // namespace mechlin
