#include <gtest/gtest.h>

#include "mechlin/matrix.hpp"
#include "mechlin/scalar/ncexpr.hpp"
#include "support/oracles.hpp"

using namespace mechlin;

using Q = Matrix<Rational>;

namespace {

const MatmulMode kModes[] = {MatmulMode::dot, MatmulMode::columns, MatmulMode::rows, MatmulMode::outer};

Q eq2() { return Q{{2, 1, 0}, {1, 0, -1}, {0, 1, 1}}; }

}  // namespace

TEST(Matrix, ShapeChecks) {
  EXPECT_THROW(Q(0, 3), Error);
  EXPECT_THROW(Q(2, 2, std::vector<Rational>(3)), Error);
  EXPECT_THROW((Q{{1, 2}, {3}}), Error);
  try {
    (void)(Q(2, 3) * Q(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
    EXPECT_EQ(e.detail().at("left"), "2x3");
    EXPECT_EQ(e.detail().at("right"), "2x3");
  }
}

TEST(Matrix, CoefficientMatrixTimesOnes) {
  const Q a{{3, 4}, {2, -8}};
  const Q x = Q::column({1, 1});
  for (auto mode : kModes) EXPECT_EQ(matmul(a, x, mode), (Q{{7}, {-6}}));
}

TEST(Matrix, IdentityIsNeutral) {
  oracle::Rng rng(21);
  const Q b = oracle::random_rational(rng, 3, 4);
  EXPECT_EQ(Q::identity(3) * b, b);
  EXPECT_EQ(b * Q::identity(4), b);
}

TEST(Matrix, FourWaysAgreeOnRationals) {
  oracle::Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const Q a = oracle::random_rational(rng, 4, 3), b = oracle::random_rational(rng, 3, 5);
    const Q ref = matmul(a, b, MatmulMode::dot);
    for (auto mode : kModes) EXPECT_EQ(matmul(a, b, mode), ref);
  }
}

TEST(Matrix, FourWaysAgreeOnGaussians) {
  oracle::Rng rng(23);
  auto g = [&] { return GaussianRational(rng.rational(), rng.rational()); };
  for (int t = 0; t < 100; ++t) {
    Matrix<GaussianRational> a(2, 3), b(3, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a(i, j) = g();
        b(j, i) = g();
      }
    const auto ref = matmul(a, b);
    for (auto mode : kModes) EXPECT_EQ(matmul(a, b, mode), ref);
  }
}

TEST(Matrix, FourWaysKeepOperandOrderForNC) {
  const NCExpr x = NCExpr::symbol("x"), y = NCExpr::symbol("y"), u = NCExpr::symbol("u"), v = NCExpr::symbol("v");
  const Matrix<NCExpr> a{{x, y}};
  const Matrix<NCExpr> b{{u}, {v}};
  const NCExpr expect = x * u + y * v;
  for (auto mode : kModes) EXPECT_EQ(matmul(a, b, mode)(0, 0), expect);
  EXPECT_EQ(matmul(b, a)(0, 0), u * x);
  EXPECT_NE(matmul(b, a)(0, 0), x * u);
}

TEST(Matrix, TransposeProperties) {
  EXPECT_EQ((Q{{1, 2}, {3, 4}}).transpose(), (Q{{1, 3}, {2, 4}}));
  oracle::Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    const Q a = oracle::random_rational(rng, 3, 4), b = oracle::random_rational(rng, 4, 2);
    EXPECT_EQ(a.transpose().transpose(), a);
    EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
  }
}

TEST(Matrix, ConjugateTranspose) {
  const Matrix<GaussianRational> a{{GaussianRational::i()}};
  EXPECT_EQ(a.conjugate_transpose()(0, 0), GaussianRational(Rational(0), Rational(-1)));
  const Matrix<GaussianRational> b{{GaussianRational(1, 2), GaussianRational(3)}};
  const auto bh = b.conjugate_transpose();
  EXPECT_EQ(bh.rows(), 2u);
  EXPECT_EQ(bh(0, 0), GaussianRational(Rational(1), Rational(-2)));
}

TEST(Matrix, ColumnVectorsAreMatrices) {
  const Q v = Q::column({1, 2, 3});
  EXPECT_EQ(v.rows(), 3u);
  EXPECT_EQ(v.cols(), 1u);
  static_assert(std::is_same_v<decltype(v), const Matrix<Rational>>);
  EXPECT_EQ(v.transpose() * v, (Q{{14}}));
}

TEST(Blocks, SplitTwoByTwo) {
  const auto b = block_split(Q{{1, 2}, {3, 4}}, {1, 1});
  EXPECT_EQ(b.a11, (Q{{1}}));
  EXPECT_EQ(b.a12, (Q{{2}}));
  EXPECT_EQ(b.a21, (Q{{3}}));
  EXPECT_EQ(b.a22, (Q{{4}}));
}

TEST(Blocks, SplitExamMatrix) {
  const auto b = block_split(eq2(), {1, 1});
  EXPECT_EQ(b.a11, (Q{{2}}));
  EXPECT_EQ(b.a22, (Q{{0, -1}, {1, 1}}));
}

TEST(Blocks, SplitJoinRoundTrip) {
  oracle::Rng rng(25);
  const Q a = oracle::random_rational(rng, 5, 7);
  for (std::size_t r = 1; r < 5; ++r)
    for (std::size_t c = 1; c < 7; ++c) EXPECT_EQ(block_join(block_split(a, {r, c})), a);
}

TEST(Blocks, SplitMustBeInterior) {
  for (BlockPartition p : {BlockPartition{0, 1}, BlockPartition{1, 0}, BlockPartition{3, 1}, BlockPartition{1, 3}}) {
    try {
      block_split(eq2(), p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
  }
}
