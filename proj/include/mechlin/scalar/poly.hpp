#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mechlin/scalar/gaussian.hpp"

namespace mechlin {

/// Dense univariate polynomial with Gaussian-rational coefficients,
/// constant term first. The zero polynomial has no coefficients.
///
/// A polynomial built from a bare constant has an empty variable name and
/// combines with a polynomial in any variable; two polynomials with
/// different non-empty names cannot be combined.
class Poly {
 public:
  using Coeff = GaussianRational;

  Poly() = default;
  template <std::integral I>
  Poly(I c) : Poly(Coeff(c)) {}  // NOLINT
  Poly(Rational c) : Poly(Coeff(std::move(c))) {}  // NOLINT
  Poly(Coeff c) {  // NOLINT
    if (!c.is_zero()) coeffs_.push_back(std::move(c));
  }
  Poly(std::string var, std::vector<Coeff> coeffs) : var_(std::move(var)), coeffs_(std::move(coeffs)) {
    trim();
  }

  static Poly variable(std::string var) { return Poly(std::move(var), {Coeff(0), Coeff(1)}); }
  static Poly constant(std::string var, Coeff c) { return Poly(std::move(var), {std::move(c)}); }
  /// c * var^k
  static Poly term(std::string var, Coeff c, std::size_t k) {
    std::vector<Coeff> v(k + 1);
    v[k] = std::move(c);
    return Poly(std::move(var), std::move(v));
  }

  const std::string& var() const noexcept { return var_; }
  Poly with_var(std::string var) const { return Poly(std::move(var), coeffs_); }
  const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  Coeff coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Coeff(0); }
  Coeff leading() const { return coeffs_.empty() ? Coeff(0) : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == Coeff(1); }
  bool has_real_coeffs() const {
    for (const auto& c : coeffs_)
      if (!c.is_real()) return false;
    return true;
  }

  static std::string merge_var(const Poly& a, const Poly& b) {
    if (a.var_.empty()) return b.var_;
    if (b.var_.empty() || a.var_ == b.var_) return a.var_;
    throw Error(ErrorCode::VariableMismatch, "polynomials in '" + a.var_ + "' and '" + b.var_ + "'",
                {{"left", a.var_}, {"right", b.var_}});
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    var_ = merge_var(*this, o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }
  Poly& operator*=(const Poly& o) {
    var_ = merge_var(*this, o);
    if (is_zero() || o.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    std::vector<Coeff> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }

  /// Equal coefficients; names are compared only when both are non-empty
  /// and the polynomials are non-constant.
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.coeffs_ != b.coeffs_) return false;
    if (a.is_constant() || a.var_.empty() || b.var_.empty()) return true;
    return a.var_ == b.var_;
  }

  Coeff eval(const Coeff& x) const {
    Coeff acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  /// Composition this(q).
  Poly compose(const Poly& q) const {
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + Poly(*it);
    acc.var_ = q.var_.empty() ? var_ : q.var_;
    return acc;
  }

  Poly derivative() const {
    std::vector<Coeff> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Coeff(static_cast<long>(k)));
    return Poly(var_, std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Coeff lc = leading();
    for (auto& c : r.coeffs_) c /= lc;
    return r;
  }

  Poly scaled(const Coeff& s) const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c *= s;
    r.trim();
    return r;
  }

  Poly pow(unsigned e) const {
    Poly r = Poly::constant(var_, Coeff(1));
    Poly b = *this;
    while (e) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1u;
    }
    return r;
  }

  /// Quotient and remainder with deg(rem) < deg(divisor).
  static std::pair<Poly, Poly> divmod(const Poly& p, const Poly& q) {
    std::string v = merge_var(p, q);
    if (q.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
    std::vector<Coeff> rem = p.coeffs_;
    if (p.degree() < q.degree()) return {Poly(v, {}), Poly(v, rem)};
    std::vector<Coeff> quot(p.coeffs_.size() - q.coeffs_.size() + 1);
    Coeff lc_inv = Coeff(1) / q.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
      Coeff f = rem[k + q.coeffs_.size() - 1] * lc_inv;
      quot[k] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) rem[k + j] -= f * q.coeffs_[j];
    }
    rem.resize(q.coeffs_.size() - 1);
    return {Poly(v, std::move(quot)), Poly(v, std::move(rem))};
  }

  /// Monic greatest common divisor (zero only when both inputs are zero).
  static Poly gcd(Poly a, Poly b) {
    std::string v = merge_var(a, b);
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic().with_var(v);
  }

  /// Exact quotient; throws if q does not divide p.
  static Poly exact_div(const Poly& p, const Poly& q) {
    auto [quot, rem] = divmod(p, q);
    if (!rem.is_zero()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
    return quot;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string name = var_.empty() ? "z" : var_;
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Coeff& c = coeffs_[k];
      if (c.is_zero()) continue;
      std::string mono;
      if (k == 1) mono = name;
      if (k > 1) mono = name + "^" + std::to_string(k);
      std::string coef;
      bool negative = false;
      if (c.is_real()) {
        negative = c.re().sign() < 0;
        Rational a = c.re().abs();
        if (!(a == Rational(1) && k > 0)) coef = a.to_string();
      } else {
        coef = "(" + c.to_string() + ")";
      }
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? "-" : "+";
      }
      out += coef + mono;
    }
    return out;
  }

  /// Parses text such as "z^2-3z+2", "1/2a^3 - a", "(1+2i)z + 1".
  /// The variable defaults to `default_var` when the text is constant.
  static Poly parse(std::string_view text, const std::string& default_var = "") {
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::SyntaxError, why + " in polynomial '" + std::string(text) + "'",
                   {{"column", std::to_string(pos + 1)}});
    };
    auto skip = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_digits = [&] {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      return text.substr(start, pos - start);
    };
    std::string var;
    Poly result;
    bool first = true;
    skip();
    if (pos == text.size()) throw fail("empty text");
    while (pos < text.size()) {
      skip();
      bool neg = false;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
      } else if (!first) {
        throw fail("expected '+' or '-'");
      }
      first = false;
      skip();
      Coeff coef(1);
      bool have_coef = false;
      if (pos < text.size() && text[pos] == '(') {
        auto close = text.find(')', pos);
        if (close == std::string_view::npos) throw fail("unbalanced '('");
        std::string inner;
        for (char ch : text.substr(pos + 1, close - pos - 1))
          if (!std::isspace(static_cast<unsigned char>(ch))) inner += ch;
        coef = Coeff::parse(inner);
        pos = close + 1;
        have_coef = true;
      } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string lit(read_digits());
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          auto d = read_digits();
          if (d.empty()) throw fail("missing denominator");
          lit += "/" + std::string(d);
        }
        if (pos < text.size() && text[pos] == '.') throw fail("decimal literals are not accepted");
        coef = Coeff(Rational::parse(lit));
        have_coef = true;
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      }
      std::size_t exponent = 0;
      if (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
          ++pos;
        std::string name(text.substr(start, pos - start));
        if (!var.empty() && name != var) throw fail("second variable '" + name + "'");
        var = name;
        exponent = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          auto d = read_digits();
          if (d.empty()) throw fail("missing exponent");
          exponent = std::stoul(std::string(d));
        }
      } else if (!have_coef) {
        throw fail("expected a term");
      }
      if (neg) coef = -coef;
      result += Poly::term("", coef, exponent);
      skip();
    }
    return result.with_var(var.empty() ? default_var : var);
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::string var_;
  std::vector<Coeff> coeffs_;
};

}  // namespace mechlin
