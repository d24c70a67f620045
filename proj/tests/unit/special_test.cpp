#include <gtest/gtest.h>

#include "mechlin/assessment.hpp"
#include "mechlin/determinants.hpp"
#include "mechlin/factor/ldlt.hpp"
#include "mechlin/numeric/eigen.hpp"
#include "mechlin/special.hpp"
#include "support/oracles.hpp"

using namespace mechlin;

using Q = Matrix<Rational>;

namespace {

GeneratorSpec spec(MatrixKind k, std::size_t n, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = k;
  s.size = n;
  s.seed = seed;
  return s;
}

std::vector<Rational> R(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::BadRequest;
}

}  // namespace

TEST(Generate, CirculantShift) {
  auto s = spec(MatrixKind::circulant, 3, 0);
  s.first_row = R({1, 2, 3});
  const Q c = generate(s);
  EXPECT_EQ(c, (Q{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}));
}

TEST(Generate, StructureContracts) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    for (std::size_t n : {1u, 2u, 5u}) {
      const Q circ = generate(spec(MatrixKind::circulant, n, seed));
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(circ(i, (j + 1) % n), circ(i - 1, j));

      const Q toe = generate(spec(MatrixKind::toeplitz, n, seed));
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) EXPECT_EQ(toe(i, j), toe(i - 1, j - 1));
      // Reversing the rows of a Toeplitz matrix gives a Hankel matrix.
      Q rev = toe;
      for (std::size_t i = 0; i < n / 2; ++i) rev.swap_rows(i, n - 1 - i);
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) EXPECT_EQ(rev(i, j), rev(i - 1, j + 1));

      const Q han = generate(spec(MatrixKind::hankel, n, seed));
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) EXPECT_EQ(han(i, j), han(i - 1, j + 1));

      auto bs = spec(MatrixKind::banded, n, seed);
      bs.lower = 1;
      bs.upper = 2;
      const Q band = generate(bs);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i > j + 1 || j > i + 2) EXPECT_TRUE(band(i, j).is_zero());

      const Q chk = generate(spec(MatrixKind::checkerboard, n, seed));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(chk(i, j).is_zero(), (i + j) % 2 == 1);

      const Q anti = generate(spec(MatrixKind::anti_tridiagonal, n, seed));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const long d = static_cast<long>(i + j) - static_cast<long>(n - 1);
          EXPECT_EQ(anti(i, j).is_zero(), d < -1 || d > 1);
        }
    }
}

TEST(Generate, ExplicitToeplitzAndHankel) {
  auto t = spec(MatrixKind::toeplitz, 3, 0);
  t.first_row = R({1, 2, 3});
  t.first_col = R({1, 4, 5});
  EXPECT_EQ(generate(t), (Q{{1, 2, 3}, {4, 1, 2}, {5, 4, 1}}));
  auto h = spec(MatrixKind::hankel, 3, 0);
  h.first_col = R({1, 2, 3});
  h.last_row = R({3, 4, 5});
  EXPECT_EQ(generate(h), (Q{{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}));
  t.first_col = R({9, 4, 5});
  EXPECT_EQ(code_of([&] { generate(t); }), ErrorCode::InvalidArgument);
  t.first_col = R({1, 4});
  EXPECT_EQ(code_of([&] { generate(t); }), ErrorCode::InvalidArgument);
}

TEST(Generate, ReproducibleBySeed) {
  for (std::size_t k = 0; k < kMatrixKindNames.size(); ++k) {
    const auto kind = static_cast<MatrixKind>(k);
    const std::size_t n = kind == MatrixKind::gallery3 ? 3 : 4;
    EXPECT_EQ(generate(spec(kind, n, 42)), generate(spec(kind, n, 42))) << kind_name(kind);
    EXPECT_EQ(parse_kind(kind_name(kind)), kind);
  }
  EXPECT_NE(generate(spec(MatrixKind::toeplitz, 4, 1)), generate(spec(MatrixKind::toeplitz, 4, 2)));
}

TEST(Generate, SpdAndUnimodular) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Q a = generate(spec(MatrixKind::spd_random, 4, seed));
    EXPECT_EQ(a, a.transpose());
    const auto f = ldlt(a);
    for (const auto& d : f.d) EXPECT_GT(d, Rational(0));
    const Q u = generate(spec(MatrixKind::unimodular_random, 3, seed));
    const Rational d = oracle::det_leibniz(u);
    EXPECT_TRUE(d == Rational(1) || d == Rational(-1));
    for (const auto& x : u.data()) EXPECT_TRUE(x.den() == 1);
  }
  EXPECT_EQ(generate(spec(MatrixKind::gallery3, 3, 0)), gallery3());
  EXPECT_EQ(code_of([] { generate(spec(MatrixKind::gallery3, 4, 0)); }), ErrorCode::InvalidArgument);
}

TEST(Generate, CirculantEigenvaluesAreFourierValues) {
  auto ones = spec(MatrixKind::circulant, 3, 0);
  ones.first_row = R({1, 1, 1});
  EXPECT_LE(oracle::multiset_distance(eig_qr(to_double(generate(ones))).eigenvalues, {3.0, 0.0, 0.0}), 1e-10);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Q c = generate(spec(MatrixKind::circulant, 2 + seed % 6, seed));
    std::vector<double> row;
    for (std::size_t j = 0; j < c.cols(); ++j) row.push_back(c(0, j).to_double());
    EXPECT_LE(oracle::multiset_distance(eig_qr(to_double(c)).eigenvalues, oracle::circulant_eigenvalues(row)), 1e-10);
  }
}

TEST(Cayley, Examples) {
  EXPECT_EQ(cayley(Q(3, 3)), Q::identity(3));
  EXPECT_EQ(cayley(Q{{0, 1}, {-1, 0}}), (Q{{0, -1}, {1, 0}}));
  EXPECT_EQ(code_of([] { cayley(Q{{0, 1}, {1, 0}}); }), ErrorCode::NotSkewSymmetric);
}

TEST(Cayley, RandomSkewGivesRotations) {
  oracle::Rng rng(92);
  for (int t = 0; t < 30; ++t) {
    const Q g = oracle::random_rational(rng, 4, 4);
    const Q s = g - g.transpose();
    const Q q = cayley(s);
    EXPECT_EQ(q.transpose() * q, Q::identity(4));
    EXPECT_EQ(oracle::det_leibniz(q), Rational(1));
  }
}

TEST(Exam, UnimodularQuestions) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto e = exam_unimodular_question(seed);
    const Rational d = oracle::det_leibniz(e.A);
    EXPECT_TRUE(d == Rational(1) || d == Rational(-1));
    EXPECT_NE(e.A, Q::identity(3));
    EXPECT_EQ(e.inverse, oracle::adjugate_inverse(e.A));
    EXPECT_EQ(e.A * e.inverse, Q::identity(3));
    for (const auto& x : e.A.data()) EXPECT_LE(x.abs(), Rational(9));
    for (const auto& x : e.inverse.data()) EXPECT_TRUE(x.den() == 1);
  }
  EXPECT_EQ(exam_unimodular_question(7).A, exam_unimodular_question(7).A);
}

TEST(Exam, TridiagonalExampleQualifies) {
  const Q a{{2, 1, 0}, {1, 0, -1}, {0, 1, 1}};
  EXPECT_EQ(oracle::det_leibniz(a), Rational(1));
  EXPECT_EQ(oracle::adjugate_inverse(a), (Q{{1, -1, -1}, {-1, 2, 2}, {1, -2, -1}}));
}

TEST(Assessment, FloorClosestOption) {
  EXPECT_EQ(mc_floor_answer(std::sqrt(2.0), {1.2, 1.3, 1.5, 1.8}), 1.3);
  EXPECT_EQ(mc_floor_answer(1.5, {1.2, 1.3, 1.5, 1.8}), 1.5);
  EXPECT_EQ(code_of([] { mc_floor_answer(1.0, {1.2, 1.3}); }), ErrorCode::NoValidOption);
}
