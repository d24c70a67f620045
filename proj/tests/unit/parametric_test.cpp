#include <gtest/gtest.h>

#include "mechlin/parametric.hpp"
#include "mechlin/polyroots.hpp"
#include "support/oracles.hpp"

using namespace mechlin;

using Q = Matrix<Rational>;

namespace {

ParamMatrix PM(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<Poly> e;
  std::size_t r = 0, c = 0;
  for (const auto& row : rows) {
    c = row.size();
    ++r;
    for (const char* s : row) e.push_back(Poly::parse(s, "a"));
  }
  return ParamMatrix{"a", Matrix<Poly>(r, c, e)};
}

std::vector<ParamMatrix> corpus() {
  return {
      PM({{"a", "1"}, {"1", "a"}}),
      PM({{"a", "0"}, {"0", "1"}}),
      PM({{"1", "2"}, {"3", "4"}}),
      PM({{"a", "a"}, {"a", "a"}}),
      PM({{"1", "a", "a^2"}, {"1", "1", "1"}}),
      PM({{"a", "1", "1"}, {"1", "a", "1"}, {"1", "1", "a"}}),
      PM({{"a^2-2", "1", "0"}, {"0", "a", "1"}, {"1", "0", "a-3"}}),
      PM({{"1", "a", "0", "2"}, {"a", "1", "1", "0"}, {"0", "1", "a", "a^2"}}),
  };
}

const CaseLeaf* zero_leaf(const CaseTree& t, const char* q) {
  for (const auto& l : t.leaves)
    if (l.condition.constraints.size() == 1 && l.condition.constraints[0].kind == ConstraintKind::zero &&
        l.condition.constraints[0].q == Poly::parse(q, "a"))
      return &l;
  return nullptr;
}

}  // namespace

TEST(ParametricRref, SymmetricTwoByTwoHasThreeLeaves) {
  const auto t = parametric_rref(PM({{"a", "1"}, {"1", "a"}}));
  ASSERT_EQ(t.leaves.size(), 3u);
  const auto& g = t.leaves[0];
  EXPECT_TRUE(g.condition.is_generic());
  EXPECT_EQ(g.rank, 2u);
  EXPECT_EQ(g.rref, Matrix<RatFunc>::identity(2));
  std::vector<Poly> assumed;
  for (const auto& c : g.condition.constraints) {
    EXPECT_EQ(c.kind, ConstraintKind::nonzero);
    assumed.push_back(c.q);
  }
  EXPECT_EQ(assumed.size(), 2u);
  const auto* plus = zero_leaf(t, "a+1");
  const auto* minus = zero_leaf(t, "a-1");
  ASSERT_NE(plus, nullptr);
  ASSERT_NE(minus, nullptr);
  EXPECT_EQ(minus->rank, 1u);
  EXPECT_EQ(plus->rank, 1u);
  EXPECT_EQ(minus->rref, (Matrix<RatFunc>{{RatFunc(1), RatFunc(1)}, {RatFunc(0), RatFunc(0)}}));
  EXPECT_EQ(plus->rref, (Matrix<RatFunc>{{RatFunc(1), RatFunc(-1)}, {RatFunc(0), RatFunc(0)}}));
}

TEST(ParametricRref, ConstantMatrixIsOrdinaryRref) {
  const auto t = parametric_rref(PM({{"1", "2"}, {"2", "4"}}));
  ASSERT_EQ(t.leaves.size(), 1u);
  EXPECT_TRUE(t.leaves[0].condition.is_generic());
  EXPECT_EQ(t.leaves[0].rank, 1u);
  EXPECT_EQ(t.leaves[0].rref.map([](const RatFunc& f) { return f.eval(GaussianRational(0)).re(); }),
            oracle::rref(Q{{1, 2}, {2, 4}}));
}

TEST(ParametricRref, DiagonalParameter) {
  const auto t = parametric_rref(PM({{"a", "0"}, {"0", "1"}}));
  ASSERT_EQ(t.leaves.size(), 2u);
  EXPECT_EQ(t.leaves[0].rank, 2u);
  const auto* z = zero_leaf(t, "a");
  ASSERT_NE(z, nullptr);
  EXPECT_EQ(z->rank, 1u);
}

TEST(ParametricRref, NonlinearConstraintIsCarriedSymbolically) {
  const auto t = parametric_rref(PM({{"a^2-2", "1"}, {"0", "1"}}));
  const auto* q = zero_leaf(t, "a^2-2");
  ASSERT_NE(q, nullptr);
  EXPECT_TRUE(q->generic_on_constraint);
  EXPECT_EQ(q->rank, 1u);
  EXPECT_EQ(t.leaves[0].rank, 2u);
}

TEST(ParametricRref, Guards) {
  try {
    parametric_rref(PM({{"a^5", "1"}, {"1", "a"}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(ParametricDet, Examples) {
  EXPECT_EQ(parametric_det(PM({{"a", "1"}, {"1", "a"}})), Poly::parse("a^2-1", "a"));
  EXPECT_EQ(parametric_det(PM({{"1", "0"}, {"0", "1"}})), Poly::parse("1", "a"));
  EXPECT_TRUE(parametric_det(PM({{"a", "a"}, {"a", "a"}})).is_zero());
  EXPECT_THROW(parametric_det(PM({{"a", "1"}})), Error);
}

TEST(Specialize, Examples) {
  const auto m = PM({{"a", "1"}, {"1", "a"}});
  const auto t = parametric_rref(m);
  EXPECT_EQ(specialize(m, Rational(3)), (Q{{3, 1}, {1, 3}}));
  const auto at3 = specialize_leaf(t, Rational(3));
  EXPECT_EQ(at3.leaf_index, 0u);
  EXPECT_EQ(at3.rref, Q::identity(2));
  EXPECT_EQ(*at3.det, Rational(8));
  const auto at1 = specialize_leaf(t, Rational(1));
  EXPECT_EQ(at1.rank, 1u);
  EXPECT_EQ(at1.rref, (Q{{1, 1}, {0, 0}}));
  EXPECT_EQ(specialize_leaf(t, Rational(0)).leaf_index, 0u);
}

TEST(Specialize, SoundAtRandomPoints) {
  oracle::Rng rng(91);
  for (const auto& m : corpus()) {
    const auto t = parametric_rref(m);
    std::vector<Rational> points;
    for (int k = 0; k < 20; ++k) points.push_back(rng.rational(-6, 6, 4));
    // Rank-drop points, where the sibling leaves apply.
    for (const auto& l : t.leaves)
      for (const auto& c : l.condition.constraints)
        if (c.kind == ConstraintKind::zero && c.q.degree() == 1) points.push_back(-c.q.coeff(0).re());
    for (const auto& a0 : points) {
      const Q s = specialize(m, a0);
      const auto leaf = specialize_leaf(t, a0);
      const Q want = oracle::rref(s);
      EXPECT_EQ(leaf.rref, want) << "a = " << a0.to_string();
      EXPECT_EQ(leaf.rank, oracle::rank_of_rref(want));
      if (leaf.det) EXPECT_EQ(*leaf.det, oracle::det_leibniz(s));
    }
  }
}

TEST(Specialize, ZeroLeavesMatchDeterminantRoots) {
  for (const auto& m : corpus()) {
    if (!m.entries.is_square()) continue;
    const Poly d = parametric_det(m);
    if (d.is_zero()) continue;
    std::vector<Rational> roots = rational_roots(d).first;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<Rational> from_leaves;
    for (const auto& l : parametric_rref(m).leaves)
      for (const auto& c : l.condition.constraints)
        if (c.kind == ConstraintKind::zero && c.q.degree() == 1) from_leaves.push_back(-c.q.coeff(0).re());
    std::sort(from_leaves.begin(), from_leaves.end());
    EXPECT_EQ(from_leaves, roots) << d.to_string();
  }
}

TEST(Specialize, GenericRankIsMaximal) {
  for (const auto& m : corpus()) {
    const auto t = parametric_rref(m);
    for (const auto& l : t.leaves) EXPECT_LE(l.rank, t.leaves[0].rank);
  }
}
