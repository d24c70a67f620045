#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "mechlin/error.hpp"

namespace mechlin {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number num/den, always stored in lowest terms with den > 0.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  template <std::integral I>
  Rational(I n) : num_(n), den_(1) {}  // NOLINT: implicit by design of a number type
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  /// Parses "p", "-p", "p/q". Whitespace is not allowed.
  static Rational parse(std::string_view text) {
    auto bad = [&] {
      return Error(ErrorCode::SyntaxError, "malformed rational '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
      std::size_t i = 0;
      bool neg = false;
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        i = 1;
      }
      if (i >= s.size()) throw bad();
      BigInt v = 0;
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw bad();
        v = v * 10 + (s[i] - '0');
      }
      return neg ? BigInt(-v) : v;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    return Rational(parse_int(text.substr(0, slash), true), parse_int(text.substr(slash + 1), false));
  }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_.sign(); }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
    BigInt n = num_ * o.den_;
    BigInt d = den_ * o.num_;
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt l = a.num_ * b.den_;
    BigInt r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational inverse() const { return Rational(1) / *this; }
  Rational abs() const { return num_.sign() < 0 ? -*this : *this; }

  double to_double() const {
    return boost::multiprecision::cpp_rational(num_, den_).convert_to<double>();
  }

  std::string to_string() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    if (den_ == 1) return;
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline Rational abs(const Rational& r) { return r.abs(); }
inline Rational conj(const Rational& r) { return r; }

/// Sets root = sqrt(n) and returns true when n is a perfect square.
inline bool exact_isqrt(const BigInt& n, BigInt& root) {
  if (n.sign() < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

/// Exact square root of a nonnegative rational, when it is rational.
inline bool exact_sqrt(const Rational& r, Rational& root) {
  BigInt a, b;
  if (!exact_isqrt(r.num(), a) || !exact_isqrt(r.den(), b)) return false;
  root = Rational(a, b);
  return true;
}

}  // namespace mechlin
