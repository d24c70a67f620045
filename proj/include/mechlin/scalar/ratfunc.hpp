#pragma once

#include <ostream>
#include <string>

#include "mechlin/scalar/poly.hpp"

namespace mechlin {

/// Quotient of polynomials in one variable, kept in canonical form:
/// coprime numerator and denominator, monic denominator. Equality is
/// therefore plain component comparison.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  template <std::integral I>
  RatFunc(I c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(Rational c) : num_(std::move(c)), den_(1) {}  // NOLINT
  RatFunc(GaussianRational c) : num_(std::move(c)), den_(1) {}  // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.var(), 1)) {}  // NOLINT
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  std::string var() const { return Poly::merge_var(num_, den_); }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }

  RatFunc operator-() const { return RatFunc(-num_, den_, canonical_tag{}); }
  RatFunc& operator+=(const RatFunc& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
      // den_ stays monic; the numerator may now share a factor with it.
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  RatFunc& operator-=(const RatFunc& o) { return *this += -o; }
  RatFunc& operator*=(const RatFunc& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  RatFunc& operator/=(const RatFunc& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Value at x; DivisionByZero when the denominator vanishes there.
  GaussianRational eval(const GaussianRational& x) const {
    GaussianRational d = den_.eval(x);
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "denominator vanishes at " + x.to_string());
    return num_.eval(x) / d;
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    auto wrap = [](const Poly& p) {
      std::string s = p.to_string();
      bool single = p.coeffs().size() <= 1 || s.find_first_of("+-", 1) == std::string::npos;
      return single ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

 private:
  struct canonical_tag {};
  RatFunc(Poly num, Poly den, canonical_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    std::string v = Poly::merge_var(num_, den_);
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator polynomial");
    if (num_.is_zero()) {
      num_ = Poly(v, {});
      den_ = Poly::constant(v, 1);
      return;
    }
    if (den_.degree() > 0) {
      Poly g = Poly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = Poly::exact_div(num_, g);
        den_ = Poly::exact_div(den_, g);
      }
    }
    GaussianRational lc = den_.leading();
    if (!(lc == GaussianRational(1))) {
      GaussianRational inv = GaussianRational(1) / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
    num_ = num_.with_var(v);
    den_ = den_.with_var(v);
  }

  Poly num_;
  Poly den_;
};

}  // namespace mechlin
