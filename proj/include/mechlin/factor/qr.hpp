#pragma once

#include <cmath>
#include <string>

#include "mechlin/matrix.hpp"

namespace mechlin {

enum class QRMode { householder_double, mgs_exact };

/// A = Q*R with Q m x n and R n x n upper triangular.
/// householder_double: Q has orthonormal columns.
/// mgs_exact: Q has mutually orthogonal (unnormalized) columns and R is
/// unit upper triangular, so everything stays rational.
template <Ring S>
struct QRFactors {
  Matrix<S> Q;
  Matrix<S> R;
  QRMode mode;
};

/// Thin Householder QR.
inline QRFactors<double> qr_householder(const Matrix<double>& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m < n)
    throw Error(ErrorCode::ShapeMismatch, "QR needs rows >= cols", {{"shape", shape_string(m, n)}});
  Matrix<double> r = a;
  std::vector<std::vector<double>> reflectors;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> v(m - k);
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      v[i - k] = r(i, k);
      norm = std::hypot(norm, r(i, k));
    }
    if (norm == 0.0) {
      reflectors.emplace_back();
      continue;
    }
    double alpha = v[0] >= 0 ? -norm : norm;
    v[0] -= alpha;
    double vnorm = 0.0;
    for (double x : v) vnorm = std::hypot(vnorm, x);
    if (vnorm == 0.0) {
      reflectors.emplace_back();
      continue;
    }
    for (double& x : v) x /= vnorm;
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * r(i, j);
      for (std::size_t i = k; i < m; ++i) r(i, j) -= 2.0 * v[i - k] * dot;
    }
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    reflectors.push_back(std::move(v));
  }
  // Q = H_0 H_1 ... H_{n-1} applied to the first n columns of I.
  Matrix<double> q(m, n);
  for (std::size_t j = 0; j < n; ++j) q(j, j) = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    const auto& v = reflectors[k];
    if (v.empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * q(i, j);
      for (std::size_t i = k; i < m; ++i) q(i, j) -= 2.0 * v[i - k] * dot;
    }
  }
  // Flip signs so that R has a nonnegative diagonal.
  Matrix<double> rr = r.block(0, 0, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (rr(k, k) < 0) {
      for (std::size_t j = 0; j < n; ++j) rr(k, j) = -rr(k, j);
      for (std::size_t i = 0; i < m; ++i) q(i, k) = -q(i, k);
    }
  }
  return {std::move(q), std::move(rr), QRMode::householder_double};
}

/// Exact modified Gram-Schmidt without square roots. Requires full column rank.
template <Field S>
  requires is_exact_v<S>
QRFactors<S> qr_exact(const Matrix<S>& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m < n)
    throw Error(ErrorCode::ShapeMismatch, "QR needs rows >= cols", {{"shape", shape_string(m, n)}});
  Matrix<S> q = a;
  Matrix<S> r = Matrix<S>::identity(n);
  std::vector<S> norms(n, S(0));
  for (std::size_t k = 0; k < n; ++k) {
    S nk(0);
    for (std::size_t i = 0; i < m; ++i) nk = nk + q(i, k) * q(i, k);
    if (is_zero(nk))
      throw Error(ErrorCode::RankDeficient, "column " + std::to_string(k + 1) + " depends on earlier columns",
                  {{"col", std::to_string(k + 1)}});
    norms[k] = nk;
    for (std::size_t j = k + 1; j < n; ++j) {
      S dot(0);
      for (std::size_t i = 0; i < m; ++i) dot = dot + q(i, k) * q(i, j);
      S f = dot / nk;
      r(k, j) = f;
      if (is_zero(f)) continue;
      for (std::size_t i = 0; i < m; ++i) q(i, j) = q(i, j) - f * q(i, k);
    }
  }
  return {std::move(q), std::move(r), QRMode::mgs_exact};
}

}  // namespace mechlin
