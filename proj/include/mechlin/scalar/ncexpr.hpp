#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mechlin/scalar/rational.hpp"

namespace mechlin {

/// A symbol or its formal inverse inside a noncommutative word.
struct Atom {
  std::string symbol;
  int power = 1;  // +1 or -1

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

using Word = std::vector<Atom>;

/// Graded lexicographic order: shorter words first, then atom-wise.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Element of the free algebra over Q on symbols and their formal inverses,
/// modulo x*x^-1 = x^-1*x = 1. Stored in normal form: every word is
/// reduced, like words are merged, and no coefficient is zero.
class NCExpr {
 public:
  using Terms = std::map<Word, Rational, WordOrder>;

  NCExpr() = default;
  template <std::integral I>
  NCExpr(I c) : NCExpr(Rational(c)) {}  // NOLINT
  NCExpr(Rational c) {  // NOLINT
    if (!c.is_zero()) terms_.emplace(Word{}, std::move(c));
  }

  static NCExpr symbol(std::string name) {
    NCExpr e;
    e.terms_.emplace(Word{Atom{std::move(name), 1}}, Rational(1));
    return e;
  }

  /// Builds an expression from raw (coefficient, word) pairs and normalizes it.
  static NCExpr from_terms(const std::vector<std::pair<Rational, Word>>& raw) {
    NCExpr e;
    for (const auto& [c, w] : raw) e.add_term(reduce(w), c);
    return e;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// The expression re-normalized from its terms. Idempotent.
  NCExpr normalized() const {
    NCExpr e;
    for (const auto& [w, c] : terms_) e.add_term(reduce(w), c);
    return e;
  }

  /// True for c*x with a single atom word and c != 0.
  bool is_single_atom() const {
    return terms_.size() == 1 && terms_.begin()->first.size() == 1;
  }

  /// Formal inverse, defined only for c*x (x a symbol or a symbol inverse).
  NCExpr inverse() const {
    if (!is_single_atom())
      throw Error(ErrorCode::NonInvertible,
                  "only a single symbol has a formal inverse, not '" + to_string() + "'");
    const auto& [w, c] = *terms_.begin();
    NCExpr e;
    e.terms_.emplace(Word{Atom{w[0].symbol, -w[0].power}}, c.inverse());
    return e;
  }

  NCExpr operator-() const {
    NCExpr e = *this;
    for (auto& [w, c] : e.terms_) c = -c;
    return e;
  }
  NCExpr& operator+=(const NCExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCExpr& operator-=(const NCExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  /// Noncommutative product: words concatenate left then right.
  friend NCExpr operator*(const NCExpr& a, const NCExpr& b) {
    NCExpr e;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        e.add_term(reduce(w), ca * cb);
      }
    }
    return e;
  }
  NCExpr& operator*=(const NCExpr& o) { return *this = *this * o; }
  friend NCExpr operator+(NCExpr a, const NCExpr& b) { return a += b; }
  friend NCExpr operator-(NCExpr a, const NCExpr& b) { return a -= b; }
  friend bool operator==(const NCExpr& a, const NCExpr& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      bool neg = c.sign() < 0;
      Rational mag = c.abs();
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      std::string word;
      for (const auto& a : w) {
        if (!word.empty()) word += "*";
        word += a.symbol;
        if (a.power < 0) word += "^-1";
      }
      if (w.empty()) {
        out += mag.to_string();
      } else if (mag == Rational(1)) {
        out += word;
      } else {
        out += mag.to_string() + "*" + word;
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const NCExpr& e) { return os << e.to_string(); }

 private:
  /// Cancels adjacent x*x^-1 and x^-1*x pairs (stack reduction, so
  /// cascades such as a*b*b^-1*a^-1 collapse completely).
  static Word reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const auto& a : w) {
      if (!out.empty() && out.back().symbol == a.symbol && out.back().power == -a.power) {
        out.pop_back();
      } else {
        out.push_back(a);
      }
    }
    return out;
  }

  void add_term(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Unreduced sum of (coefficient, word) pairs, e.g. as typed by a user.
using NCTermList = std::vector<std::pair<Rational, Word>>;

inline NCExpr nc_normalize(const NCTermList& raw) { return NCExpr::from_terms(raw); }
inline NCExpr nc_normalize(const NCExpr& e) { return e.normalized(); }

}  // namespace mechlin
