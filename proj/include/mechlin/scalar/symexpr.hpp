#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "mechlin/scalar/rational.hpp"

namespace mechlin {

/// Commutative polynomial in named symbols with rational coefficients.
/// A monomial is the sorted multiset of its symbol names.
class SymExpr {
 public:
  using Monomial = std::vector<std::string>;

  SymExpr() = default;
  template <std::integral I>
  SymExpr(I c) : SymExpr(Rational(c)) {}  // NOLINT
  SymExpr(Rational c) {  // NOLINT
    if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
  }

  static SymExpr symbol(std::string name) {
    SymExpr e;
    e.terms_.emplace(Monomial{std::move(name)}, Rational(1));
    return e;
  }

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  SymExpr operator-() const {
    SymExpr e = *this;
    for (auto& [m, c] : e.terms_) c = -c;
    return e;
  }
  SymExpr& operator+=(const SymExpr& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  SymExpr& operator-=(const SymExpr& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    SymExpr e;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.reserve(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        e.add(m, ca * cb);
      }
    }
    return e;
  }
  SymExpr& operator*=(const SymExpr& o) { return *this = *this * o; }
  friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
  friend bool operator==(const SymExpr&, const SymExpr&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      bool neg = c.sign() < 0;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      Rational mag = c.abs();
      std::string mono;
      for (const auto& s : m) mono += (mono.empty() ? "" : "*") + s;
      if (m.empty()) {
        out += mag.to_string();
      } else if (mag == Rational(1)) {
        out += mono;
      } else {
        out += mag.to_string() + "*" + mono;
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const SymExpr& e) { return os << e.to_string(); }

 private:
  void add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<Monomial, Rational> terms_;
};

}  // namespace mechlin
