#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "mechlin/matrix.hpp"

namespace mechlin {

/// A = U * diag(sigma) * V^T with k = min(rows, cols) columns in U and V.
struct SVDResult {
  Matrix<double> U;
  std::vector<double> sigma;  // non-increasing
  Matrix<double> V;
};

namespace detail {

// Orthonormalize column j of q against columns [0, j) by Gram-Schmidt,
// trying unit vectors until one survives. Used for columns of U whose
// singular value is zero.
inline void complete_column(Matrix<double>& q, std::size_t j) {
  const std::size_t m = q.rows();
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<double> v(m, 0.0);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += q(i, k) * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= dot * q(i, k);
      }
    }
    double norm = 0.0;
    for (double x : v) norm = std::hypot(norm, x);
    if (norm > 0.5) {
      for (std::size_t i = 0; i < m; ++i) q(i, j) = v[i] / norm;
      return;
    }
  }
}

inline SVDResult svd_tall(const Matrix<double>& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<double> w = a;
  Matrix<double> v = Matrix<double>::identity(n);
  constexpr int kMaxSweeps = 60;
  constexpr double kTol = 1e-15;
  // Columns at roundoff level relative to A carry no information; rotating
  // them against each other never settles.
  double fro = 0.0;
  for (double x : a.data()) fro += x * x;
  const double floor_norm = static_cast<double>(m) * std::numeric_limits<double>::epsilon() * std::sqrt(fro);
  const double floor_sq = floor_norm * floor_norm;
  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        if (std::min(alpha, beta) <= floor_sq) continue;
        converged = false;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
  }
  if (!converged)
    throw Error(ErrorCode::NonConvergence, "Jacobi SVD hit the sweep cap", {{"sweeps", std::to_string(kMaxSweeps)}});

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s = std::hypot(s, w(i, j));
    sigma[j] = s;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SVDResult out{Matrix<double>(m, n), std::vector<double>(n), Matrix<double>(n, n)};
  const double tiny = (sigma.empty() ? 0.0 : sigma[order[0]]) * std::numeric_limits<double>::epsilon() * static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.V(i, k) = v(i, j);
    if (sigma[j] > tiny && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.U(i, k) = w(i, j) / sigma[j];
    } else {
      detail::complete_column(out.U, k);
    }
  }
  return out;
}

}  // namespace detail

/// One-sided (Hestenes) Jacobi SVD. Wide inputs are handled through A^T.
inline SVDResult svd_jacobi(const Matrix<double>& a) {
  if (a.rows() >= a.cols()) return detail::svd_tall(a);
  SVDResult t = detail::svd_tall(a.transpose());
  return {std::move(t.V), std::move(t.sigma), std::move(t.U)};
}

inline std::vector<double> singular_values(const Matrix<double>& a) { return svd_jacobi(a).sigma; }

/// sigma_1 / sigma_n, or +inf when the smallest singular value is zero.
inline double condition_number(const Matrix<double>& a) {
  auto s = singular_values(a);
  if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

/// Number of singular values above rel_tol * sigma_1.
inline std::size_t numeric_rank(const Matrix<double>& a, double rel_tol = 1e-8) {
  auto s = singular_values(a);
  if (s.empty() || s.front() == 0.0) return 0;
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double x) { return x > rel_tol * s.front(); }));
}

}  // namespace mechlin
