#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <type_traits>

#include "mechlin/scalar/gaussian.hpp"
#include "mechlin/scalar/rational.hpp"

namespace mechlin {

/// Minimal ring interface every matrix scalar satisfies. Multiplication is
/// not required to commute (NCExpr is a ring here).
template <class S>
concept Ring = std::copyable<S> && std::equality_comparable<S> && requires(const S& a, const S& b) {
  { S(0) };
  { S(1) };
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
};

template <class S>
concept Field = Ring<S> && requires(const S& a, const S& b) {
  { a / b } -> std::convertible_to<S>;
};

template <class T>
struct is_std_complex : std::false_type {};
template <class T>
struct is_std_complex<std::complex<T>> : std::true_type {};

/// Floating-point scalars compare magnitudes and carry rounding error;
/// everything else is exact.
template <class S>
inline constexpr bool is_floating_v = std::is_floating_point_v<S> || is_std_complex<S>::value;

template <class S>
inline constexpr bool is_exact_v = !is_floating_v<S>;

template <Ring S>
bool is_zero(const S& s) {
  return s == S(0);
}

inline double conj(double x) { return x; }

/// Scalars that have a conjugation (used by conjugate_transpose).
template <class S>
concept Conjugable = requires(const S& s) {
  { conj(s) } -> std::convertible_to<S>;
};

/// An ordered magnitude used by magnitude-based pivot searches. Exact
/// symbolic scalars (Poly, RatFunc) have none.
inline double pivot_weight(double x) { return std::abs(x); }
inline double pivot_weight(const std::complex<double>& x) { return std::abs(x); }
inline Rational pivot_weight(const Rational& x) { return x.abs(); }
inline Rational pivot_weight(const GaussianRational& x) { return x.norm(); }

template <class S>
concept Weighted = requires(const S& s) { pivot_weight(s); };

/// Scalar -> double/complex conversion used at the exact/numeric boundary.
inline double to_double(double x) { return x; }
inline double to_double(const Rational& r) { return r.to_double(); }
inline std::complex<double> to_complex(const GaussianRational& g) {
  return {g.re().to_double(), g.im().to_double()};
}
inline std::complex<double> to_complex(const Rational& r) { return {r.to_double(), 0.0}; }
inline std::complex<double> to_complex(double x) { return {x, 0.0}; }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

}  // namespace mechlin
