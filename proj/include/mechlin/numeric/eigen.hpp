#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mechlin/matrix.hpp"

namespace mechlin {

using cdouble = std::complex<double>;

struct HessenbergForm {
  Matrix<double> H;
  Matrix<double> Q;  // Q^T * A * Q == H
};

struct EigResult {
  std::vector<cdouble> eigenvalues;
  std::optional<Matrix<cdouble>> eigenvectors;  // column k pairs with eigenvalue k
  int iterations = 0;
};

/// Frobenius norm.
template <class S>
double frobenius_norm(const Matrix<S>& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::norm(to_complex(x));
  return std::sqrt(s);
}

/// Householder reduction to upper Hessenberg form.
inline HessenbergForm hessenberg(const Matrix<double>& a) {
  require_square(a, "hessenberg");
  const std::size_t n = a.rows();
  Matrix<double> h = a;
  Matrix<double> q = Matrix<double>::identity(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::vector<double> v(n - k - 1);
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k - 1] = h(i, k);
      norm = std::hypot(norm, h(i, k));
    }
    // Column already reduced.
    bool reduced = true;
    for (std::size_t i = k + 2; i < n; ++i)
      if (h(i, k) != 0.0) reduced = false;
    if (reduced) continue;
    double alpha = v[0] >= 0 ? -norm : norm;
    v[0] -= alpha;
    double vnorm = 0.0;
    for (double x : v) vnorm = std::hypot(vnorm, x);
    for (double& x : v) x /= vnorm;
    // H <- P H P with P = I - 2 v v^T acting on rows/cols k+1..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += v[i - k - 1] * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i - k - 1] * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j - k - 1];
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * dot * v[j - k - 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += q(i, j) * v[j - k - 1];
      for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= 2.0 * dot * v[j - k - 1];
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return {std::move(h), std::move(q)};
}

namespace detail {

/// Solves (M) x = b in place for a small dense complex system with
/// partial pivoting; zero pivots are replaced by `tiny` so that
/// inverse iteration on an (almost) singular shift still makes progress.
inline std::vector<cdouble> complex_solve(Matrix<cdouble> m, std::vector<cdouble> b, double tiny) {
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (p != k) {
      m.swap_rows(p, k);
      std::swap(b[p], b[k]);
    }
    if (std::abs(m(k, k)) < tiny) m(k, k) = tiny;
    for (std::size_t i = k + 1; i < n; ++i) {
      cdouble f = m(i, k) / m(k, k);
      if (f == cdouble(0)) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<cdouble> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cdouble acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
    x[i] = acc / m(i, i);
  }
  return x;
}

inline double vec_norm(const std::vector<cdouble>& x) {
  double s = 0.0;
  for (auto v : x) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace detail

/// Unit eigenvector for an (approximate) eigenvalue by inverse iteration,
/// phased so that its largest component is real and positive.
inline std::vector<cdouble> inverse_iteration(const Matrix<cdouble>& a, cdouble lambda) {
  const std::size_t n = a.rows();
  const double scale = std::max(frobenius_norm(a), 1.0);
  const double tiny = scale * std::numeric_limits<double>::epsilon();
  Matrix<cdouble> shifted = a;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
  std::vector<cdouble> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = cdouble(1.0 + 0.1 * static_cast<double>(i % 7), 0.01 * static_cast<double>(i));
  for (int it = 0; it < 3; ++it) {
    x = detail::complex_solve(shifted, x, tiny);
    double nx = detail::vec_norm(x);
    for (auto& v : x) v /= nx;
  }
  std::size_t big = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i]) > std::abs(x[big]) * (1.0 + 1e-12)) big = i;
  if (std::abs(x[big]) > 0.0) {
    const cdouble phase = std::conj(x[big]) / std::abs(x[big]);
    for (auto& v : x) v *= phase;
  }
  return x;
}

/// ||A x - lambda x||_2 / (||A||_2 ||x||_2). The 2-norm of A is taken from
/// its largest singular value via the Frobenius norm bound's companion,
/// computed by power iteration on A^H A.
double spectral_norm(const Matrix<cdouble>& a);

inline double backward_error_eig(const Matrix<cdouble>& a, cdouble lambda, const std::vector<cdouble>& x) {
  const std::size_t n = a.rows();
  std::vector<cdouble> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    cdouble acc = -lambda * x[i];
    for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
    r[i] = acc;
  }
  double na = spectral_norm(a);
  double nx = detail::vec_norm(x);
  if (na == 0.0 || nx == 0.0) return detail::vec_norm(r) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return detail::vec_norm(r) / (na * nx);
}

inline double spectral_norm(const Matrix<cdouble>& a) {
  const std::size_t n = a.cols();
  std::vector<cdouble> v(n, cdouble(1.0));
  double est = 0.0;
  for (int it = 0; it < 200; ++it) {
    std::vector<cdouble> w(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += a(i, j) * v[j];
    std::vector<cdouble> u(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < a.rows(); ++i) u[j] += std::conj(a(i, j)) * w[i];
    double nu = detail::vec_norm(u);
    if (nu == 0.0) return 0.0;
    double next = std::sqrt(nu / detail::vec_norm(v));
    for (std::size_t j = 0; j < n; ++j) v[j] = u[j] / nu;
    if (std::abs(next - est) <= 1e-15 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

inline Matrix<cdouble> to_complex_matrix(const Matrix<double>& a) {
  return a.map([](double x) { return cdouble(x, 0.0); });
}

/// Eigenvalues by the implicit double-shift QR iteration on the Hessenberg
/// form. Complex pairs come from 2x2 blocks. Deflation when
/// |h(k+1,k)| <= 1e-14 (|h(k,k)| + |h(k+1,k+1)|). At most 100*n iterations
/// unless max_iterations > 0 lowers the cap.
inline EigResult eig_qr(const Matrix<double>& a, bool want_vectors = false, int max_iterations = 0) {
  require_square(a, "eig_qr");
  const int n = static_cast<int>(a.rows());
  if (n > 200) throw Error(ErrorCode::OutOfRange, "eig_qr is limited to n <= 200", {{"n", std::to_string(n)}});
  constexpr double kDeflate = 1e-14;
  Matrix<double> h = hessenberg(a).H;
  std::vector<cdouble> w(n);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));

  const int cap = max_iterations > 0 ? std::min(max_iterations, 100 * n) : 100 * n;
  int total = 0;
  int nn = n - 1;
  double t = 0.0;
  auto sign = [](double mag, double ref) { return ref >= 0.0 ? std::abs(mag) : -std::abs(mag); };
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(h(l, l - 1)) <= kDeflate * s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      double x = h(nn, nn);
      if (l == nn) {
        w[nn--] = x + t;
      } else {
        double y = h(nn - 1, nn - 1);
        double ww = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + ww;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign(z, p);
            w[nn - 1] = w[nn] = x + z;
            if (z != 0.0) w[nn] = x - ww / z;
          } else {
            w[nn] = cdouble(x + p, -z);
            w[nn - 1] = std::conj(w[nn]);
          }
          nn -= 2;
        } else {
          if (total >= cap)
            throw Error(ErrorCode::NonConvergence, "QR iteration did not converge",
                        {{"block_start", std::to_string(l + 1)}, {"block_end", std::to_string(nn + 1)}});
          if (its > 0 && its % 10 == 0) {
            // Exceptional shift.
            t += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            ww = -0.4375 * s * s;
          }
          ++its;
          ++total;
          int m = nn - 2;
          double p = 0, q = 0, r = 0, z = 0;
          for (; m >= l; --m) {
            z = h(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - ww) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - r - s;
            r = h(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
            double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
            if (u <= std::numeric_limits<double>::epsilon() * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            h(i + 2, i) = 0.0;
            if (i != m) h(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = h(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = sign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = h(k, j) + q * h(k + 1, j);
              if (k + 1 != nn) {
                p += r * h(k + 2, j);
                h(k + 2, j) -= p * z;
              }
              h(k + 1, j) -= p * y;
              h(k, j) -= p * x;
            }
            int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * h(i, k) + y * h(i, k + 1);
              if (k + 1 != nn) {
                p += z * h(i, k + 2);
                h(i, k + 2) -= p * r;
              }
              h(i, k + 1) -= p * q;
              h(i, k) -= p;
            }
          }
        }
      }
    } while (l + 1 < nn);
  }

  std::sort(w.begin(), w.end(), [](cdouble a1, cdouble b1) {
    if (a1.real() != b1.real()) return a1.real() < b1.real();
    return a1.imag() < b1.imag();
  });
  EigResult out{std::move(w), std::nullopt, total};
  if (want_vectors) {
    Matrix<cdouble> ac = to_complex_matrix(a);
    Matrix<cdouble> vecs(a.rows(), a.cols());
    for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
      auto x = inverse_iteration(ac, out.eigenvalues[k]);
      for (std::size_t i = 0; i < x.size(); ++i) vecs(i, k) = x[i];
    }
    out.eigenvectors = std::move(vecs);
  }
  return out;
}

/// 1 / |y^H x| for unit right (x) and left (y) eigenvectors of lambda.
inline double eig_condition(const Matrix<double>& a, cdouble lambda) {
  require_square(a, "eig_condition");
  Matrix<cdouble> ac = to_complex_matrix(a);
  auto x = inverse_iteration(ac, lambda);
  auto y = inverse_iteration(ac.conjugate_transpose(), std::conj(lambda));
  cdouble dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += std::conj(y[i]) * x[i];
  double mag = std::abs(dot);
  return mag == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / mag;
}

/// The classic ill-conditioned 3x3 demo matrix with eigenvalues 1, 2, 3.
inline Matrix<double> gallery3_double() {
  return Matrix<double>{{-149, -50, -154}, {537, 180, 546}, {-27, -9, -25}};
}

/// Eigenvalues of gallery3 + t * e1 e1^T.
inline EigResult gallery3_sensitivity(double t) {
  if (!(std::abs(t) <= 1.0))
    throw Error(ErrorCode::OutOfRange, "perturbation size must satisfy |t| <= 1");
  Matrix<double> a = gallery3_double();
  a(0, 0) += t;
  return eig_qr(a);
}

}  // namespace mechlin
