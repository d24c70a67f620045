#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "mechlin/scalar/rational.hpp"

namespace mechlin {

/// re + im*i with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  template <std::integral I>
  GaussianRational(I n) : re_(n) {}  // NOLINT
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  /// Parses the text form used on the wire: "3", "-1/2", "2i", "-i",
  /// "1/2+3/4i", "1-i". The real part, when present, comes first.
  static GaussianRational parse(std::string_view text) {
    auto bad = [&] {
      return Error(ErrorCode::SyntaxError, "malformed gaussian rational '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    if (text.back() != 'i') return GaussianRational(Rational::parse(text));
    std::string_view body = text.substr(0, text.size() - 1);
    // The split point is the last sign that is not the leading character.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        split = k;
        break;
      }
    }
    Rational re;
    std::string_view imag = body;
    if (split != std::string_view::npos) {
      re = Rational::parse(body.substr(0, split));
      imag = body.substr(split);
    }
    Rational im;
    if (imag.empty() || imag == "+") {
      im = 1;
    } else if (imag == "-") {
      im = -1;
    } else {
      if (imag[0] == '+') imag.remove_prefix(1);
      im = Rational::parse(imag);
    }
    return {re, im};
  }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }
  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  /// Squared modulus re^2 + im^2.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (im_.is_zero() && o.im_.is_zero()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "gaussian rational division by zero");
    if (o.im_.is_zero()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  std::string to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string imag;
    if (im_ == Rational(1)) {
      imag = "i";
    } else if (im_ == Rational(-1)) {
      imag = "-i";
    } else {
      imag = im_.to_string() + "i";
    }
    if (re_.is_zero()) return imag;
    return re_.to_string() + (im_.sign() > 0 ? "+" : "") + imag;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
    return os << g.to_string();
  }

 private:
  Rational re_;
  Rational im_;
};

inline GaussianRational conj(const GaussianRational& g) { return g.conj(); }

/// Exact square root in Q(i), if one exists.
inline bool exact_sqrt(const GaussianRational& z, GaussianRational& root) {
  if (z.is_real() && z.re().sign() >= 0) {
    Rational r;
    if (!exact_sqrt(z.re(), r)) return false;
    root = r;
    return true;
  }
  if (z.is_real()) {
    Rational r;
    if (!exact_sqrt(-z.re(), r)) return false;
    root = GaussianRational(Rational(0), r);
    return true;
  }
  // (x + yi)^2 = a + bi  =>  x^2 = (a + |z|)/2, y = b / (2x)
  Rational modulus;
  if (!exact_sqrt(z.norm(), modulus)) return false;
  Rational x;
  if (!exact_sqrt((z.re() + modulus) / 2, x)) return false;
  if (x.is_zero()) return false;
  root = GaussianRational(x, z.im() / (x * 2));
  return true;
}

}  // namespace mechlin
