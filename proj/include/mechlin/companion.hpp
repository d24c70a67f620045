#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mechlin/determinants.hpp"
#include "mechlin/polyroots.hpp"
#include "mechlin/scalar/poly.hpp"

namespace mechlin {

enum class Basis { monomial, chebyshev };

inline const char* basis_name(Basis b) { return b == Basis::monomial ? "monomial" : "chebyshev"; }

/// A matrix (or pencil lambda*B - A) representing multiplication by z.
struct CompanionResult {
  Matrix<Rational> A;
  std::optional<Matrix<Rational>> B;
  Basis basis = Basis::monomial;
  Rational height;
};

/// Largest absolute value of any entry.
inline Rational height(const Matrix<Rational>& a) {
  Rational h(0);
  for (const auto& x : a.data()) h = std::max(h, x.abs());
  return h;
}

namespace detail {

template <class S>
GaussianRational as_coeff(const S& s) {
  return GaussianRational(s);
}

template <class S>
S from_coeff(const GaussianRational& g) {
  if constexpr (std::is_same_v<S, GaussianRational>)
    return g;
  else
    return S(g.re());
}

// Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
template <Field S>
std::vector<GaussianRational> trace_recursion(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  std::vector<GaussianRational> c(n + 1);
  c[n] = GaussianRational(1);
  Matrix<S> m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<S> am = a * m;
    for (std::size_t i = 0; i < n; ++i) am(i, i) = am(i, i) + from_coeff<S>(c[n - k + 1]);
    m = std::move(am);
    Matrix<S> prod = a * m;
    S tr(0);
    for (std::size_t i = 0; i < n; ++i) tr = tr + prod(i, i);
    c[n - k] = -as_coeff(tr) / GaussianRational(static_cast<long long>(k));
  }
  return c;
}

}  // namespace detail

/// det(z I - A), monic of degree n. Laplace over the polynomial ring for
/// n <= 6, the Faddeev-LeVerrier trace recursion above that.
template <Field S>
  requires is_exact_v<S>
Poly charpoly(const Matrix<S>& a, const std::string& var = "z") {
  require_square(a, "charpoly");
  const std::size_t n = a.rows();
  if (n <= 6) {
    Matrix<Poly> m(n, n);
    const Poly z = Poly::variable(var);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Poly entry(-detail::as_coeff(a(i, j)));
        m(i, j) = i == j ? z + entry : entry.with_var(var);
      }
    return det_laplace(m).with_var(var);
  }
  return Poly(var, detail::trace_recursion(a));
}

/// Trace recursion regardless of size (oracle for the overlap with Laplace).
template <Field S>
  requires is_exact_v<S>
Poly charpoly_trace(const Matrix<S>& a, const std::string& var = "z") {
  require_square(a, "charpoly_trace");
  return Poly(var, detail::trace_recursion(a));
}

/// Frobenius companion: ones on the subdiagonal, -c_0..-c_{n-1} in the last column.
inline CompanionResult frobenius_companion(const Poly& p) {
  if (p.degree() < 1)
    throw Error(ErrorCode::InvalidArgument, "companion needs degree >= 1", {{"poly", p.to_string()}});
  if (!p.is_monic())
    throw Error(ErrorCode::NotMonic, "polynomial is not monic; use the companion pencil",
                {{"leading", p.leading().to_string()}});
  auto c = rational_coeffs(p);
  const std::size_t n = static_cast<std::size_t>(p.degree());
  Matrix<Rational> a(n, n);
  for (std::size_t i = 1; i < n; ++i) a(i, i - 1) = Rational(1);
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -c[i];
  Rational h = height(a);
  return {std::move(a), std::nullopt, Basis::monomial, std::move(h)};
}

/// Pencil (A, B) with det(z B - A) = p: A has the Frobenius shape built from
/// the raw coefficients and B = diag(1, ..., 1, leading coefficient).
inline CompanionResult companion_pencil(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "companion of the zero polynomial");
  if (p.degree() < 1)
    throw Error(ErrorCode::InvalidArgument, "companion needs degree >= 1", {{"poly", p.to_string()}});
  auto c = rational_coeffs(p);
  const std::size_t n = static_cast<std::size_t>(p.degree());
  Matrix<Rational> a(n, n);
  for (std::size_t i = 1; i < n; ++i) a(i, i - 1) = Rational(1);
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -c[i];
  Matrix<Rational> b = Matrix<Rational>::identity(n);
  b(n - 1, n - 1) = c[n];
  Rational h = std::max(height(a), height(b));
  return {std::move(a), std::move(b), Basis::monomial, std::move(h)};
}

/// det(z B - A) over the polynomial ring.
inline Poly pencil_determinant(const Matrix<Rational>& a, const Matrix<Rational>& b, const std::string& var = "z") {
  require_square(a, "pencil_determinant");
  const std::size_t n = a.rows();
  const Poly z = Poly::variable(var);
  Matrix<Poly> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (z * Poly(b(i, j)) - Poly(a(i, j))).with_var(var);
  return det_laplace(m).with_var(var);
}

/// Colleague matrix of p = sum c_k T_k (Chebyshev first kind), c_n != 0.
/// Its eigenvalues are the roots of p.
inline CompanionResult colleague_chebyshev(const std::vector<Rational>& c) {
  if (c.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "colleague matrix needs degree >= 1");
  const std::size_t n = c.size() - 1;
  if (c[n].is_zero())
    throw Error(ErrorCode::ZeroPolynomial, "leading Chebyshev coefficient is zero");
  Matrix<Rational> a(n, n);
  const Rational half(1, 2);
  if (n == 1) {
    a(0, 0) = -c[0] / c[1];
  } else {
    a(0, 1) = Rational(1);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      a(k, k - 1) = half;
      a(k, k + 1) = half;
    }
    a(n - 1, n - 2) = half;
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = a(n - 1, j) - c[j] / (Rational(2) * c[n]);
  }
  Rational h = height(a);
  return {std::move(a), std::nullopt, Basis::chebyshev, std::move(h)};
}

/// p_0 = 0, p_{k+1} = z p_k^2 + 1.
inline Poly mandelbrot_poly(int n, const std::string& var = "z") {
  if (n < 0 || n > 8)
    throw Error(ErrorCode::OutOfRange, "Mandelbrot polynomial index must be in 0..8", {{"n", std::to_string(n)}});
  const Poly z = Poly::variable(var);
  Poly p(var, {});
  for (int k = 0; k < n; ++k) p = z * p * p + Poly(1);
  return p.with_var(var);
}

/// Height-1 companion of p_n of dimension 2^(n-1) - 1. Built recursively:
/// from M (dimension d) whose resolvent adj(zI - M) has the constant entry
/// -+1 at (r, c), form diag(M, 0, M) and couple the blocks through the
/// middle row and column:
///   A(c, d+1+r) = -1,  A(d+1, r) = 1,  A(d+1+c, d+1) = 1   (0-based offsets)
/// which gives det(zI - A) = z det(zI - M)^2 + 1. The new constant
/// resolvent entry sits at (d, d+1+c). The result is checked against the
/// characteristic polynomial before it is returned.
inline CompanionResult mandelbrot_companion(int n) {
  if (n < 2 || n > 6)
    throw Error(ErrorCode::OutOfRange, "Mandelbrot companion index must be in 2..6", {{"n", std::to_string(n)}});
  Matrix<Rational> m{{Rational(-1)}};
  std::size_t r = 0, c = 0;
  for (int k = 2; k < n; ++k) {
    const std::size_t d = m.rows();
    Matrix<Rational> a(2 * d + 1, 2 * d + 1);
    a.set_block(0, 0, m);
    a.set_block(d + 1, d + 1, m);
    a(c, d + 1 + r) = Rational(-1);
    a(d, r) = Rational(1);
    a(d + 1 + c, d) = Rational(1);
    r = d;
    c = d + 1 + c;
    m = std::move(a);
  }
  const Poly target = mandelbrot_poly(n);
  const Poly got = charpoly(m);
  if (!(got == target) && !(got == -target))
    throw Error(ErrorCode::ConstructionError, "Mandelbrot companion failed its characteristic polynomial check",
                {{"n", std::to_string(n)}, {"charpoly", got.to_string()}});
  Rational h = height(m);
  return {std::move(m), std::nullopt, Basis::monomial, std::move(h)};
}

struct HeightSearchResult {
  Matrix<Rational> A;
  Rational height;
};

namespace detail {

// Coefficients (c0, c1, ..., c_{n-1}) of det(zI - A) for n <= 3, integers.
inline std::array<std::int64_t, 3> small_charpoly(const std::int64_t* e, int n) {
  if (n == 1) return {-e[0], 0, 0};
  if (n == 2) return {e[0] * e[3] - e[1] * e[2], -(e[0] + e[3]), 0};
  const std::int64_t tr = e[0] + e[4] + e[8];
  const std::int64_t minors = (e[0] * e[4] - e[1] * e[3]) + (e[0] * e[8] - e[2] * e[6]) + (e[4] * e[8] - e[5] * e[7]);
  const std::int64_t det = e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
                           e[2] * (e[3] * e[7] - e[4] * e[6]);
  return {-det, minors, -tr};
}

// True when the minimal polynomial has degree n, i.e. I, A, ..., A^{n-1}
// are independent, so A is similar to the Frobenius companion.
inline bool nonderogatory(const std::int64_t* e, int n) {
  if (n == 1) return true;
  if (n == 2) return e[1] != 0 || e[2] != 0 || e[0] != e[3];
  std::array<std::array<std::int64_t, 3>, 9> v{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::int64_t sq = 0;
      for (int k = 0; k < 3; ++k) sq += e[i * 3 + k] * e[k * 3 + j];
      v[static_cast<std::size_t>(i * 3 + j)] = {i == j ? 1 : 0, e[i * 3 + j], sq};
    }
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = a + 1; b < 9; ++b)
      for (std::size_t c = b + 1; c < 9; ++c) {
        const auto &x = v[a], &y = v[b], &z = v[c];
        const std::int64_t d = x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) +
                               x[2] * (y[0] * z[1] - y[1] * z[0]);
        if (d != 0) return true;
      }
  return false;
}

}  // namespace detail

/// Exhaustive scan for an integer matrix with characteristic polynomial p
/// and the smallest height h <= hmax. Heights are scanned in increasing
/// order; within a height, entries run lexicographically (row-major) over
/// -h..h, and only matrices of height exactly h are tested. A match must
/// also be nonderogatory (similar to the Frobenius companion of p).
inline HeightSearchResult min_height_companion_search(const Poly& p, int hmax = 2) {
  if (!p.is_monic()) throw Error(ErrorCode::NotMonic, "search needs a monic polynomial");
  const int n = p.degree();
  if (n < 1 || n > 3)
    throw Error(ErrorCode::OutOfRange, "search is limited to degree 1..3", {{"degree", std::to_string(n)}});
  if (hmax < 0 || hmax > 2)
    throw Error(ErrorCode::OutOfRange, "search is limited to hmax <= 2", {{"hmax", std::to_string(hmax)}});
  std::array<std::int64_t, 3> want{0, 0, 0};
  for (int k = 0; k < n; ++k) {
    const auto& c = p.coeff(static_cast<std::size_t>(k));
    if (!c.is_real() || !c.re().is_integer())
      throw Error(ErrorCode::InvalidArgument, "search needs integer coefficients", {{"poly", p.to_string()}});
    if (c.re().abs() > Rational(1000000))
      throw Error(ErrorCode::NotFound, "coefficients too large for any height <= 2 matrix", {{"poly", p.to_string()}});
    want[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(c.re().num());
  }
  const int cells = n * n;
  for (int h = 0; h <= hmax; ++h) {
    std::array<std::int64_t, 9> e{};
    for (int i = 0; i < cells; ++i) e[static_cast<std::size_t>(i)] = -h;
    while (true) {
      bool exact_height = h == 0;
      for (int i = 0; i < cells && !exact_height; ++i)
        if (e[static_cast<std::size_t>(i)] == h || e[static_cast<std::size_t>(i)] == -h) exact_height = true;
      if (exact_height && detail::small_charpoly(e.data(), n) == want && detail::nonderogatory(e.data(), n)) {
        Matrix<Rational> a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int i = 0; i < cells; ++i) a(static_cast<std::size_t>(i / n), static_cast<std::size_t>(i % n)) = Rational(e[static_cast<std::size_t>(i)]);
        return {std::move(a), Rational(h)};
      }
      int pos = cells - 1;
      while (pos >= 0 && e[static_cast<std::size_t>(pos)] == h) {
        e[static_cast<std::size_t>(pos)] = -h;
        --pos;
      }
      if (pos < 0) break;
      ++e[static_cast<std::size_t>(pos)];
    }
  }
  throw Error(ErrorCode::NotFound, "no integer companion with height <= " + std::to_string(hmax),
              {{"poly", p.to_string()}, {"hmax", std::to_string(hmax)}});
}

/// Exact eigenvalues where they are cheap: 2x2 by the quadratic formula
/// when the discriminant is a square, otherwise rational roots of the
/// characteristic polynomial. `unsolved` is what is left (constant 1 when
/// everything was found).
struct ExactEigen {
  std::vector<GaussianRational> eigenvalues;
  Poly unsolved;
  std::string note;
};

template <Field S>
  requires is_exact_v<S>
ExactEigen eig_exact_small(const Matrix<S>& a) {
  require_square(a, "eig_exact_small");
  const std::size_t n = a.rows();
  ExactEigen out;
  out.unsolved = Poly("z", {GaussianRational(1)});
  if (n == 1) {
    out.eigenvalues.push_back(detail::as_coeff(a(0, 0)));
    return out;
  }
  if (n == 2) {
    const GaussianRational t = detail::as_coeff(a(0, 0) + a(1, 1));
    const GaussianRational d = detail::as_coeff(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    const GaussianRational disc = t * t - GaussianRational(4) * d;
    GaussianRational s;
    if (exact_sqrt(disc, s)) {
      const GaussianRational half(Rational(1, 2));
      out.eigenvalues.push_back((t - s) * half);
      out.eigenvalues.push_back((t + s) * half);
      return out;
    }
    out.unsolved = charpoly(a);
    out.note = "irrational, use numeric";
    return out;
  }
  Poly p = charpoly(a);
  if (!p.has_real_coeffs()) {
    out.unsolved = p;
    out.note = "complex characteristic polynomial, use numeric";
    return out;
  }
  auto [roots, rest] = rational_roots(p);
  for (const auto& r : roots) out.eigenvalues.emplace_back(r);
  out.unsolved = rest.monic();
  if (rest.degree() >= 1) out.note = "remaining factor has no rational roots, use numeric";
  return out;
}

}  // namespace mechlin
