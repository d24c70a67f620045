#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mechlin/determinants.hpp"
#include "mechlin/factor/turing.hpp"
#include "mechlin/polyroots.hpp"
#include "mechlin/scalar/ratfunc.hpp"

namespace mechlin {

/// Matrix whose entries are polynomials in one parameter.
struct ParamMatrix {
  std::string param = "a";
  Matrix<Poly> entries;
};

enum class ConstraintKind { zero, nonzero };

struct Constraint {
  Poly q;  // monic, irreducible over Q
  ConstraintKind kind = ConstraintKind::nonzero;

  bool holds_at(const Rational& a0) const {
    const bool vanishes = q.eval(GaussianRational(a0)).is_zero();
    return kind == ConstraintKind::zero ? vanishes : !vanishes;
  }
  std::string to_string() const { return q.to_string() + (kind == ConstraintKind::zero ? " = 0" : " != 0"); }
  friend bool operator==(const Constraint& a, const Constraint& b) { return a.kind == b.kind && a.q == b.q; }
};

struct Condition {
  std::vector<Constraint> constraints;

  bool holds_at(const Rational& a0) const {
    return std::all_of(constraints.begin(), constraints.end(), [&](const Constraint& c) { return c.holds_at(a0); });
  }
  bool is_generic() const {
    return std::none_of(constraints.begin(), constraints.end(),
                        [](const Constraint& c) { return c.kind == ConstraintKind::zero; });
  }
  std::string to_string() const {
    if (constraints.empty()) return "always";
    std::string s;
    for (const auto& c : constraints) s += (s.empty() ? "" : ", ") + c.to_string();
    return s;
  }
};

struct CaseLeaf {
  Condition condition;
  Matrix<RatFunc> rref;
  std::size_t rank = 0;
  std::optional<RatFunc> det;
  // Set when the leaf rests on a nonlinear constraint q = 0: the payload was
  // computed in Q[a]/(q) and holds at every root of q, none of them rational.
  bool generic_on_constraint = false;
};

struct CaseTree {
  std::string param;
  std::vector<CaseLeaf> leaves;
};

struct SpecializedLeaf {
  std::size_t leaf_index = 0;
  Matrix<Rational> rref;
  std::size_t rank = 0;
  std::optional<Rational> det;
};

namespace detail {

inline bool poly_order(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.to_string() < b.to_string();
}

inline Poly reduce_mod(const Poly& p, const Poly& q) { return Poly::divmod(p, q).second; }

// s with s*p = 1 mod q, for q irreducible and p != 0 mod q.
inline Poly inverse_mod(const Poly& p, const Poly& q) {
  Poly r0 = q, r1 = reduce_mod(p, q);
  Poly s0(q.var(), {}), s1(q.var(), {GaussianRational(1)});
  while (!r1.is_zero()) {
    auto [quot, rem] = Poly::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly s2 = s0 - quot * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw Error(ErrorCode::ConstructionError, "modulus is not irreducible", {{"q", q.to_string()}});
  return reduce_mod(s0.scaled(GaussianRational(1) / r0.leading()), q);
}

inline void check_param_matrix(const ParamMatrix& m) {
  if (m.entries.rows() > 4 || m.entries.cols() > 4)
    throw Error(ErrorCode::OutOfRange, "parametric matrices are limited to 4x4",
                {{"shape", shape_string(m.entries.rows(), m.entries.cols())}});
  for (const auto& e : m.entries.data()) {
    if (e.degree() > 4)
      throw Error(ErrorCode::OutOfRange, "parametric entries are limited to degree 4", {{"entry", e.to_string()}});
    if (!e.var().empty() && e.var() != m.param)
      throw Error(ErrorCode::VariableMismatch, "entry uses a different parameter",
                  {{"entry", e.to_string()}, {"param", m.param}});
    rational_coeffs(e);
  }
}

inline std::optional<RatFunc> leaf_det_const(const ParamMatrix& m, const Matrix<Rational>& s) {
  if (!m.entries.is_square()) return std::nullopt;
  return RatFunc(det_turing(s));
}

// Leaf for a rational root a0 of a linear factor: substitute and reduce.
inline CaseLeaf linear_leaf(const ParamMatrix& m, const Poly& q) {
  const Rational a0 = -q.coeff(0).re();
  Matrix<Rational> s = m.entries.map([&](const Poly& p) { return p.eval(GaussianRational(a0)).re(); });
  auto t = turing(s);
  CaseLeaf leaf;
  leaf.condition.constraints.push_back({q, ConstraintKind::zero});
  leaf.rref = t.R.map([](const Rational& r) { return RatFunc(r); });
  leaf.rank = t.rank;
  leaf.det = leaf_det_const(m, s);
  return leaf;
}

// Leaf for an irreducible q of degree >= 2: Gauss-Jordan in the field Q[a]/(q).
inline CaseLeaf quotient_leaf(const ParamMatrix& m, const Poly& q) {
  const std::size_t rows = m.entries.rows(), cols = m.entries.cols();
  Matrix<Poly> w = m.entries.map([&](const Poly& p) { return reduce_mod(p.with_var(q.var()), q); });
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!w(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    w.swap_rows(pr, r);
    const Poly inv = inverse_mod(w(r, c), q);
    for (std::size_t j = 0; j < cols; ++j) w(r, j) = reduce_mod(w(r, j) * inv, q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || w(i, c).is_zero()) continue;
      const Poly f = w(i, c);
      for (std::size_t j = 0; j < cols; ++j) w(i, j) = reduce_mod(w(i, j) - f * w(r, j), q);
    }
    ++r;
  }
  CaseLeaf leaf;
  leaf.condition.constraints.push_back({q, ConstraintKind::zero});
  leaf.rref = w.map([](const Poly& p) { return RatFunc(p); });
  leaf.rank = r;
  if (m.entries.is_square()) leaf.det = RatFunc(reduce_mod(det_laplace(m.entries).with_var(q.var()), q));
  leaf.generic_on_constraint = true;
  return leaf;
}

inline std::vector<Poly> new_factors(const RatFunc& x, const std::vector<Poly>& known) {
  std::vector<Poly> out;
  if (x.num().degree() < 1) return out;
  for (const auto& [q, mult] : factor_rational(x.num())) {
    (void)mult;
    bool seen = std::any_of(known.begin(), known.end(), [&](const Poly& k) { return k == q; });
    if (!seen) out.push_back(q);
  }
  return out;
}

}  // namespace detail

/// Comprehensive RREF as a case tree. Elimination runs over rational
/// functions in the parameter. At each pivot the candidate with the fewest
/// not-yet-assumed irreducible numerator factors is used; each such factor q
/// spawns a sibling leaf q = 0, and q != 0 is assumed from then on.
/// Linear q are handled by substituting the root; nonlinear q by elimination
/// in Q[a]/(q).
inline CaseTree parametric_rref(const ParamMatrix& m) {
  detail::check_param_matrix(m);
  const std::string& v = m.param;
  const std::size_t rows = m.entries.rows(), cols = m.entries.cols();
  Matrix<RatFunc> w = m.entries.map([&](const Poly& p) { return RatFunc(p.with_var(v)); });
  std::vector<Poly> assumed;  // factors assumed nonzero on the generic path
  std::vector<CaseLeaf> split_leaves;

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    std::vector<Poly> best_new;
    for (std::size_t i = r; i < rows; ++i) {
      if (w(i, c).is_zero()) continue;
      auto nf = detail::new_factors(w(i, c), assumed);
      if (best == rows || nf.size() < best_new.size()) {
        best = i;
        best_new = std::move(nf);
        if (best_new.empty()) break;
      }
    }
    if (best == rows) continue;
    std::sort(best_new.begin(), best_new.end(), detail::poly_order);
    for (const auto& q : best_new) {
      split_leaves.push_back(q.degree() == 1 ? detail::linear_leaf(m, q) : detail::quotient_leaf(m, q));
      assumed.push_back(q);
    }
    w.swap_rows(best, r);
    const RatFunc pivot = w(r, c);
    for (std::size_t j = 0; j < cols; ++j) w(r, j) = w(r, j) / pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || w(i, c).is_zero()) continue;
      const RatFunc f = w(i, c);
      for (std::size_t j = 0; j < cols; ++j) w(i, j) = w(i, j) - f * w(r, j);
    }
    ++r;
  }

  CaseLeaf generic;
  std::sort(assumed.begin(), assumed.end(), detail::poly_order);
  for (const auto& q : assumed) generic.condition.constraints.push_back({q, ConstraintKind::nonzero});
  generic.rref = std::move(w);
  generic.rank = r;
  if (m.entries.is_square()) generic.det = RatFunc(det_laplace(m.entries).with_var(v));

  CaseTree tree{v, {}};
  tree.leaves.push_back(std::move(generic));
  std::sort(split_leaves.begin(), split_leaves.end(), [](const CaseLeaf& a, const CaseLeaf& b) {
    return detail::poly_order(a.condition.constraints.front().q, b.condition.constraints.front().q);
  });
  for (auto& l : split_leaves) tree.leaves.push_back(std::move(l));
  return tree;
}

/// det as a polynomial in the parameter (Laplace over the polynomial ring).
inline Poly parametric_det(const ParamMatrix& m) {
  require_square(m.entries, "parametric_det");
  return det_laplace(m.entries).with_var(m.param);
}

inline Matrix<Rational> specialize(const ParamMatrix& m, const Rational& a0) {
  return m.entries.map([&](const Poly& p) {
    GaussianRational g = p.eval(GaussianRational(a0));
    if (!g.is_real()) throw Error(ErrorCode::InvalidArgument, "entry is not real at this parameter value");
    return g.re();
  });
}

/// The unique leaf whose condition holds at a0, with its payload evaluated there.
inline SpecializedLeaf specialize_leaf(const CaseTree& tree, const Rational& a0) {
  std::optional<std::size_t> hit;
  for (std::size_t k = 0; k < tree.leaves.size(); ++k) {
    if (!tree.leaves[k].condition.holds_at(a0)) continue;
    if (hit)
      throw Error(ErrorCode::ConstructionError, "parameter value satisfies two leaves",
                  {{"a", a0.to_string()}, {"first", std::to_string(*hit)}, {"second", std::to_string(k)}});
    hit = k;
  }
  if (!hit) throw Error(ErrorCode::NotFound, "parameter value satisfies no leaf", {{"a", a0.to_string()}});
  const CaseLeaf& leaf = tree.leaves[*hit];
  SpecializedLeaf out;
  out.leaf_index = *hit;
  out.rref = leaf.rref.map([&](const RatFunc& f) { return f.eval(GaussianRational(a0)).re(); });
  out.rank = leaf.rank;
  if (leaf.det) out.det = leaf.det->eval(GaussianRational(a0)).re();
  return out;
}

}  // namespace mechlin
