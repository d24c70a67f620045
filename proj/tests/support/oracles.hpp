#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the library's elimination, determinant or eigen code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mechlin/matrix.hpp"

namespace oracle {

using mechlin::GaussianRational;
using mechlin::Matrix;
using mechlin::Rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational(long long lo = -9, long long hi = 9, long long max_den = 5) {
    return Rational(mechlin::BigInt(integer(lo, hi)), mechlin::BigInt(integer(1, max_den)));
  }
  double real(double lo = -1.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0);
  }
  bool coin(int one_in) { return integer(1, one_in) == 1; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline Matrix<Rational> random_rational(Rng& rng, std::size_t m, std::size_t n, long long max_den = 5) {
  Matrix<Rational> a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.rational(-9, 9, max_den);
  return a;
}

inline Matrix<Rational> random_integer(Rng& rng, std::size_t m, std::size_t n, long long lo = -9, long long hi = 9) {
  Matrix<Rational> a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(rng.integer(lo, hi));
  return a;
}

inline Matrix<double> random_double(Rng& rng, std::size_t m, std::size_t n) {
  Matrix<double> a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.real();
  return a;
}

// Rank at most r: (m x r) * (r x n), with small integer factors.
inline Matrix<Rational> random_low_rank(Rng& rng, std::size_t m, std::size_t n, std::size_t r) {
  if (r == 0) return Matrix<Rational>(m, n);
  return random_integer(rng, m, r, -3, 3) * random_rational(rng, r, n, 3);
}

/// Textbook Gauss-Jordan: scan columns left to right, take the first
/// nonzero entry at or below the current row, scale it to one and clear the
/// rest of the column.
template <class S>
Matrix<S> rref(Matrix<S> a) {
  std::size_t lead = 0;
  for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
    std::size_t p = lead;
    while (p < a.rows() && a(p, c) == S(0)) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(lead, j));
    const S inv = S(1) / a(lead, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(lead, j) = a(lead, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == lead || a(i, c) == S(0)) continue;
      const S f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(lead, j);
    }
    ++lead;
  }
  return a;
}

template <class S>
std::size_t rank_of_rref(const Matrix<S>& r) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < r.cols(); ++j) zero = zero && r(i, j) == S(0);
    if (!zero) ++k;
  }
  return k;
}

template <class S>
bool is_rref(const Matrix<S>& r) {
  long last_pivot = -1;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (c < r.cols() && r(i, c) == S(0)) ++c;
    if (c == r.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row || static_cast<long>(c) <= last_pivot || !(r(i, c) == S(1))) return false;
    for (std::size_t k = 0; k < r.rows(); ++k)
      if (k != i && !(r(k, c) == S(0))) return false;
    last_pivot = static_cast<long>(c);
  }
  return true;
}

/// Leibniz formula: sum over all permutations. Any commutative ring, n <= 8.
template <class S>
S det_leibniz(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  S total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    S term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term = term * a(i, p[i]);
    total = total + term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

template <class S>
Matrix<S> minor_of(const Matrix<S>& a, std::size_t r, std::size_t c) {
  Matrix<S> m(a.rows() - 1, a.cols() - 1);
  for (std::size_t i = 0, mi = 0; i < a.rows(); ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, mj = 0; j < a.cols(); ++j) {
      if (j == c) continue;
      m(mi, mj++) = a(i, j);
    }
    ++mi;
  }
  return m;
}

/// adj(A) / det(A) with cofactors from the Leibniz formula.
template <class S>
Matrix<S> adjugate_inverse(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  const S d = det_leibniz(a);
  Matrix<S> inv(n, n);
  if (n == 1) {
    inv(0, 0) = S(1) / d;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      S cof = det_leibniz(minor_of(a, i, j));
      if ((i + j) % 2) cof = -cof;
      inv(j, i) = cof / d;
    }
  return inv;
}

/// Eigenvalues of the circulant with first row c: sum_k c_k w^(jk), w = exp(2 pi i / n).
inline std::vector<std::complex<double>> circulant_eigenvalues(const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<std::complex<double>> out;
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      s += c[k] * std::polar(1.0, 2.0 * M_PI * static_cast<double>(j * k) / static_cast<double>(n));
    out.push_back(s);
  }
  return out;
}

/// Largest distance in the best greedy pairing of two multisets of complex numbers.
inline double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < b.size(); ++k)
      if (std::abs(b[k] - x) < std::abs(b[best] - x)) best = k;
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

template <class S>
double max_abs(const Matrix<S>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracle
