#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mechlin/matrix.hpp"

namespace mechlin {

/// A x = b with A.cols() == vars.size().
template <Field S>
struct LinearSystem {
  Matrix<S> A;
  Matrix<S> b;
  std::vector<std::string> vars;
};

struct ParseOptions {
  bool complex = false;       // reserve "i" for the imaginary unit
  bool alphabetical = false;  // order variables by name instead of first appearance
};

namespace detail {

struct ParsedEquation {
  std::map<std::string, GaussianRational> coeffs;
  GaussianRational rhs;
};

class EquationParser {
 public:
  EquationParser(std::string_view text, ParseOptions opts) : text_(text), opts_(opts) {}

  std::vector<ParsedEquation> run(std::vector<std::string>& order) {
    std::vector<ParsedEquation> out;
    while (true) {
      skip_blank_separators();
      if (at_end()) break;
      out.push_back(equation(order));
      skip_space();
      if (at_end()) break;
      if (!separator()) fail(ErrorCode::SyntaxError, "expected ';' or end of line");
    }
    if (out.empty()) fail(ErrorCode::EmptyEquation, "no equations in input");
    return out;
  }

 private:
  struct Term {
    GaussianRational coeff{1};
    std::optional<std::string> var;
  };

  std::string_view text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const { fail_at(code, msg, pos_); }

  [[noreturn]] void fail_at(ErrorCode code, const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text_[k]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw Error(code, msg + " at line " + std::to_string(line) + ", column " + std::to_string(col),
                {{"line", std::to_string(line)}, {"column", std::to_string(col)}});
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }
  bool separator() {
    if (peek() == ';' || peek() == '\n') {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip_blank_separators() {
    for (;;) {
      skip_space();
      if (!separator()) return;
    }
  }
  bool at_equation_end() {
    skip_space();
    return at_end() || peek() == ';' || peek() == '\n';
  }

  // '+' or '-' (ASCII or U+2212), returning the sign, or 0 if none.
  int sign() {
    skip_space();
    if (peek() == '+') {
      ++pos_;
      return 1;
    }
    if (peek() == '-') {
      ++pos_;
      return -1;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return -1;
    }
    return 0;
  }

  ParsedEquation equation(std::vector<std::string>& order) {
    ParsedEquation eq;
    const std::size_t start = pos_;
    std::vector<Term> left = side(order);
    skip_space();
    if (peek() != '=') {
      if (left.empty()) fail(ErrorCode::EmptyEquation, "empty equation");
      fail(ErrorCode::SyntaxError, "expected '='");
    }
    ++pos_;
    std::vector<Term> right = side(order);
    if (left.empty() || right.empty()) fail_at(ErrorCode::EmptyEquation, "equation has an empty side", start);
    for (const auto& t : left) add(eq, t, 1);
    for (const auto& t : right) add(eq, t, -1);
    return eq;
  }

  static void add(ParsedEquation& eq, const Term& t, int side) {
    GaussianRational c = side > 0 ? t.coeff : -t.coeff;
    if (t.var) {
      eq.coeffs[*t.var] += c;
    } else {
      eq.rhs -= c;
    }
  }

  std::vector<Term> side(std::vector<std::string>& order) {
    std::vector<Term> terms;
    if (at_equation_end() || peek() == '=') return terms;
    int s = sign();
    terms.push_back(term(order, s < 0));
    for (;;) {
      skip_space();
      if (at_equation_end() || peek() == '=') break;
      int next = sign();
      if (next == 0) fail(ErrorCode::SyntaxError, "expected '+' or '-'");
      terms.push_back(term(order, next < 0));
    }
    return terms;
  }

  Term term(std::vector<std::string>& order, bool negate) {
    Term t;
    bool any = false;
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.coeff *= number();
      } else if (c == '(') {
        t.coeff *= parenthesized();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = identifier();
        if (opts_.complex && name == "i") {
          t.coeff *= GaussianRational::i();
        } else {
          if (t.var) fail_at(ErrorCode::NonlinearError, "product of variables '" + *t.var + "' and '" + name + "'", at);
          t.var = name;
          if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
          skip_space();
          if (peek() == '^') {
            // x^1 is x; any other power is nonlinear.
            ++pos_;
            skip_space();
            const std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (start == pos_) fail(ErrorCode::SyntaxError, "expected an integer exponent after '^'");
            if (text_.substr(start, pos_ - start) != "1")
              fail_at(ErrorCode::NonlinearError, "power of variable '" + name + "'", at);
          }
        }
      } else if (c == '.') {
        fail(ErrorCode::SyntaxError, "decimal literals are not accepted; write p/q");
      } else {
        if (!any) fail(ErrorCode::SyntaxError, std::string("unexpected ") + (at_end() ? "end of input" : "'" + std::string(1, c) + "'"));
        break;
      }
      any = true;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
        if (at_equation_end() || peek() == '=' || peek() == '+' || peek() == '-')
          fail(ErrorCode::SyntaxError, "expected a factor after '*'");
        continue;
      }
      if (peek() == '/') {
        ++pos_;
        skip_space();
        const char d = peek();
        if (std::isalpha(static_cast<unsigned char>(d)) || d == '_') {
          std::string name = identifier();
          if (!(opts_.complex && name == "i")) fail(ErrorCode::NonlinearError, "variable '" + name + "' in a denominator");
          t.coeff /= GaussianRational::i();
        } else if (std::isdigit(static_cast<unsigned char>(d))) {
          GaussianRational den = integer_literal();
          if (den.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
          t.coeff /= den;
        } else if (d == '(') {
          GaussianRational den = parenthesized();
          if (den.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
          t.coeff /= den;
        } else {
          fail(ErrorCode::SyntaxError, "expected a denominator after '/'");
        }
        continue;
      }
    }
    if (negate) t.coeff = -t.coeff;
    return t;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  GaussianRational integer_literal() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') fail(ErrorCode::SyntaxError, "decimal literals are not accepted; write p/q");
    return GaussianRational(Rational(BigInt(std::string(text_.substr(start, pos_ - start)))));
  }

  // Integer, or p/q when a digit follows the slash directly.
  GaussianRational number() {
    GaussianRational v = integer_literal();
    if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      GaussianRational d = integer_literal();
      if (d.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
      v /= d;
    }
    return v;
  }

  // '(' constant sum ')', e.g. (1+2i) or (-3/4).
  GaussianRational parenthesized() {
    const std::size_t open = pos_;
    ++pos_;
    GaussianRational sum;
    std::vector<std::string> none;
    skip_space();
    int s = sign();
    for (bool first = true;; first = false) {
      if (!first) {
        skip_space();
        if (peek() == ')') break;
        s = sign();
        if (s == 0) fail(ErrorCode::SyntaxError, "expected '+', '-' or ')'");
      }
      skip_space();
      Term t = term(none, s < 0);
      if (t.var) fail_at(ErrorCode::SyntaxError, "parentheses may only hold a constant", open);
      sum += t.coeff;
      skip_space();
      if (peek() == ')') break;
      if (at_end()) fail_at(ErrorCode::SyntaxError, "unclosed '('", open);
    }
    ++pos_;
    return sum;
  }
};

template <Field S>
S narrow(const GaussianRational& g) {
  if constexpr (std::is_same_v<S, GaussianRational>)
    return g;
  else
    return g.re();
}

template <Field S>
LinearSystem<S> parse_impl(std::string_view text, ParseOptions opts) {
  std::vector<std::string> order;
  EquationParser parser(text, opts);
  auto eqs = parser.run(order);
  if (order.empty()) throw Error(ErrorCode::EmptyEquation, "system has no variables");
  if (opts.alphabetical) std::sort(order.begin(), order.end());
  LinearSystem<S> sys{Matrix<S>(eqs.size(), order.size()), Matrix<S>(eqs.size(), 1), order};
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = 0; j < order.size(); ++j) {
      auto it = eqs[i].coeffs.find(order[j]);
      if (it != eqs[i].coeffs.end()) sys.A(i, j) = narrow<S>(it->second);
    }
    sys.b(i, 0) = narrow<S>(eqs[i].rhs);
  }
  return sys;
}

inline std::string render_coeff(const Rational& c, bool first) {
  if (c.sign() < 0) return (first ? "-" : " - ") + (-c).to_string();
  return (first ? "" : " + ") + c.to_string();
}

inline std::string render_coeff(const GaussianRational& c, bool first) {
  if (c.is_real()) return render_coeff(c.re(), first);
  return (first ? "(" : " + (") + c.to_string() + ")";
}

inline std::string render_value(const Rational& c) { return c.to_string(); }
inline std::string render_value(const GaussianRational& c) { return c.is_real() ? c.re().to_string() : "(" + c.to_string() + ")"; }

}  // namespace detail

/// Linear equations to (A, b, vars). Equations are separated by ';' or
/// newlines; variables may appear on both sides; coefficients are integers
/// or p/q (decimals are rejected).
inline LinearSystem<Rational> parse_system(std::string_view text, ParseOptions opts = {}) {
  if (opts.complex) throw Error(ErrorCode::InvalidArgument, "use parse_system_complex for complex mode");
  return detail::parse_impl<Rational>(text, opts);
}

/// Complex mode: "i" is the imaginary unit and coefficients may be
/// Gaussian rationals such as 2i or (1+2i).
inline LinearSystem<GaussianRational> parse_system_complex(std::string_view text, ParseOptions opts = {}) {
  opts.complex = true;
  return detail::parse_impl<GaussianRational>(text, opts);
}

/// One equation per line with every variable written out (zero
/// coefficients included), so parsing the result gives back the same system.
template <Field S>
std::string render_system(const LinearSystem<S>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.A.rows(); ++i) {
    if (i) out += "\n";
    for (std::size_t j = 0; j < s.vars.size(); ++j) out += detail::render_coeff(s.A(i, j), j == 0) + "*" + s.vars[j];
    out += " = " + detail::render_value(s.b(i, 0));
  }
  return out;
}

}  // namespace mechlin
