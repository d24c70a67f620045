#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mechlin/numeric/eigen.hpp"
#include "mechlin/scalar/poly.hpp"

namespace mechlin {

/// Rational coefficients of a real polynomial, constant term first.
inline std::vector<Rational> rational_coeffs(const Poly& p) {
  if (!p.has_real_coeffs())
    throw Error(ErrorCode::InvalidArgument, "polynomial must have rational coefficients", {{"poly", p.to_string()}});
  std::vector<Rational> out;
  for (const auto& c : p.coeffs()) out.push_back(c.re());
  return out;
}

/// Numeric roots as eigenvalues of the double Frobenius companion of p.
inline std::vector<cdouble> numeric_roots(const Poly& p) {
  if (p.degree() < 1) return {};
  const Poly m = p.monic();
  const int n = m.degree();
  if (!m.has_real_coeffs()) {
    // Complex coefficients: eigenvalues of a complex companion via the
    // real 2n x 2n embedding would double every root; not needed here.
    throw Error(ErrorCode::InvalidArgument, "numeric roots need real coefficients", {{"poly", p.to_string()}});
  }
  Matrix<double> c(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -m.coeff(i).re().to_double();
  return eig_qr(c).eigenvalues;
}

namespace detail {

// Continued-fraction convergents of x with denominators up to max_den.
inline std::vector<Rational> convergents(double x, long long max_den = 10000000) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(r);
    if (std::abs(fl) > 1e15) break;
    BigInt a = static_cast<long long>(fl);
    BigInt h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    out.emplace_back(h2, k2);
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - fl;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return out;
}

inline Poly linear_factor(const std::string& var, const Rational& root) {
  return Poly(var, {GaussianRational(-root), GaussianRational(1)});
}

}  // namespace detail

/// Rational roots of a real polynomial, with multiplicity, found by
/// rounding numeric roots and confirming each candidate exactly. Returns
/// the roots and the cofactor that has no rational roots left.
inline std::pair<std::vector<Rational>, Poly> rational_roots(Poly p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero polynomial has every number as a root");
  rational_coeffs(p);
  std::vector<Rational> roots;
  // x = 0 first: exact and cheap.
  while (p.degree() >= 1 && p.coeff(0).is_zero()) {
    roots.emplace_back(0);
    p = Poly::exact_div(p, Poly(p.var(), {GaussianRational(0), GaussianRational(1)}));
  }
  bool found = true;
  while (found && p.degree() >= 1) {
    found = false;
    for (const auto& z : numeric_roots(p)) {
      if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
      for (const auto& c : detail::convergents(z.real())) {
        if (!p.eval(GaussianRational(c)).is_zero()) continue;
        roots.push_back(c);
        p = Poly::exact_div(p, detail::linear_factor(p.var(), c));
        found = true;
        break;
      }
      if (found) break;
    }
  }
  std::sort(roots.begin(), roots.end());
  return {std::move(roots), std::move(p)};
}

/// Square-free decomposition (Yun): monic p = prod s_i^i. Pairs (s_i, i)
/// with s_i of positive degree.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  if (p.degree() < 1) return out;
  Poly f = p.monic();
  Poly a = Poly::gcd(f, f.derivative());
  Poly b = Poly::exact_div(f, a);
  Poly c = Poly::exact_div(f.derivative(), a);
  Poly d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    Poly g = Poly::gcd(b, d);
    Poly nb = Poly::exact_div(b, g);
    Poly nc = Poly::exact_div(d, g);
    if (g.degree() >= 1) out.emplace_back(g.with_var(f.var()), i);
    b = nb;
    d = nc - b.derivative();
  }
  return out;
}

namespace detail {

inline std::vector<BigInt> small_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> out;
  if (n > BigInt(1000000000000LL)) return {BigInt(1), n};
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Scale so that all coefficients are integers; returns the leading one.
inline BigInt integer_leading(const Poly& p) {
  BigInt l = 1;
  for (const auto& c : p.coeffs()) l = boost::multiprecision::lcm(l, c.re().den());
  return (p.leading().re() * Rational(l)).num();
}

// Monic factor of squarefree r whose roots are `roots` (closed under
// conjugation), if one with rational coefficients exists.
inline std::optional<Poly> try_factor(const Poly& r, const std::vector<cdouble>& roots, const BigInt& lead) {
  std::vector<cdouble> c{cdouble(1.0)};
  for (auto z : roots) {
    std::vector<cdouble> next(c.size() + 1, cdouble(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= z * c[k];
    }
    c = std::move(next);
  }
  for (const auto& l : small_divisors(lead)) {
    const double ld = static_cast<double>(l);
    std::vector<GaussianRational> coeffs;
    bool ok = true;
    for (auto v : c) {
      double s = v.real() * ld;
      if (!std::isfinite(s) || std::abs(s) > 9e15) {
        ok = false;
        break;
      }
      coeffs.emplace_back(Rational(BigInt(static_cast<long long>(std::llround(s))), l));
    }
    if (!ok) continue;
    Poly cand(r.var(), std::move(coeffs));
    if (cand.degree() != static_cast<int>(roots.size())) continue;
    cand = cand.monic();
    if (Poly::divmod(r, cand).second.is_zero()) return cand;
  }
  return std::nullopt;
}

// Factor a monic squarefree polynomial without rational roots.
inline void factor_no_linear(const Poly& r, std::vector<Poly>& out) {
  if (r.degree() <= 3) {
    if (r.degree() >= 1) out.push_back(r);
    return;
  }
  auto zs = numeric_roots(r);
  // Units: a real root, or a conjugate pair.
  std::vector<std::vector<cdouble>> units;
  std::vector<bool> used(zs.size(), false);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (std::abs(zs[i].imag()) <= 1e-9 * std::max(1.0, std::abs(zs[i]))) {
      units.push_back({cdouble(zs[i].real(), 0.0)});
      continue;
    }
    std::size_t best = zs.size();
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (used[j]) continue;
      if (best == zs.size() || std::abs(zs[j] - std::conj(zs[i])) < std::abs(zs[best] - std::conj(zs[i]))) best = j;
    }
    if (best == zs.size()) {
      units.push_back({zs[i]});
      continue;
    }
    used[best] = true;
    units.push_back({zs[i], std::conj(zs[i])});
  }
  const BigInt lead = integer_leading(r);
  const int n = r.degree();
  const std::size_t u = units.size();
  long budget = 200000;
  // Smallest degree first, so the first factor found is irreducible.
  for (int target = 2; 2 * target <= n; ++target) {
    std::vector<std::size_t> pick;
    std::optional<Poly> hit;
    // Depth-first over unit subsets whose total degree equals target.
    auto search = [&](auto&& self, std::size_t start, int deg) -> bool {
      if (--budget < 0) return false;
      if (deg == target) {
        std::vector<cdouble> roots;
        for (auto k : pick) roots.insert(roots.end(), units[k].begin(), units[k].end());
        hit = try_factor(r, roots, lead);
        return hit.has_value();
      }
      for (std::size_t k = start; k < u; ++k) {
        int nd = deg + static_cast<int>(units[k].size());
        if (nd > target) continue;
        pick.push_back(k);
        if (self(self, k + 1, nd)) return true;
        pick.pop_back();
      }
      return false;
    };
    if (search(search, 0, 0)) {
      out.push_back(*hit);
      factor_no_linear(Poly::exact_div(r, *hit).monic(), out);
      return;
    }
    if (budget < 0) break;
  }
  out.push_back(r);
}

}  // namespace detail

/// Monic irreducible factors over the rationals with multiplicities, in a
/// canonical order (by degree, then by text). Degrees up to about 20.
inline std::vector<std::pair<Poly, int>> factor_rational(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  rational_coeffs(p);
  if (p.degree() > 24)
    throw Error(ErrorCode::OutOfRange, "factoring is limited to degree 24", {{"degree", std::to_string(p.degree())}});
  std::vector<std::pair<Poly, int>> out;
  for (const auto& [s, mult] : squarefree_decomposition(p)) {
    auto [roots, rest] = rational_roots(s);
    for (const auto& r : roots) out.emplace_back(detail::linear_factor(s.var(), r), mult);
    std::vector<Poly> others;
    detail::factor_no_linear(rest.monic(), others);
    for (auto& q : others) out.emplace_back(std::move(q), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.to_string() < b.first.to_string();
  });
  return out;
}

}  // namespace mechlin
