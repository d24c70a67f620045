#include <gtest/gtest.h>

#include "mechlin/determinants.hpp"
#include "mechlin/factor/solve.hpp"
#include "mechlin/scalar/poly.hpp"
#include "support/oracles.hpp"

using namespace mechlin;

using Q = Matrix<Rational>;

namespace {

Q eq2() { return Q{{2, 1, 0}, {1, 0, -1}, {0, 1, 1}}; }

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

Q random_square(oracle::Rng& rng, std::size_t n) {
  switch (rng.integer(0, 3)) {
    case 0:
      return oracle::random_low_rank(rng, n, n, n - 1);
    case 1:
      return oracle::random_integer(rng, n, n, -1, 1);  // many zero pivots
    default:
      return oracle::random_rational(rng, n, n);
  }
}

}  // namespace

TEST(Determinant, SymbolicTwoByTwo) {
  const auto m = symbolic_matrix(2);
  const SymExpr expect = SymExpr::symbol("a11") * SymExpr::symbol("a22") - SymExpr::symbol("a12") * SymExpr::symbol("a21");
  EXPECT_EQ(det_laplace(m), expect);
}

TEST(Determinant, Examples) {
  EXPECT_EQ(det_laplace(Q::identity(4)), Rational(1));
  EXPECT_EQ(det_schur(eq2()), Rational(1));
  EXPECT_EQ(det_laplace(eq2()), Rational(1));
  EXPECT_EQ(det_turing(eq2()), Rational(1));
  EXPECT_EQ(det_schur(Q{{1, 2}, {2, 4}}), Rational(0));
  EXPECT_EQ(det_schur(Q{{0, 1}, {1, 0}}), Rational(-1));
  EXPECT_EQ(code_of([] { det_laplace(Q(2, 3)); }), ErrorCode::NotSquare);
  EXPECT_EQ(code_of([] { det_schur(Q(2, 3)); }), ErrorCode::NotSquare);
}

TEST(Determinant, ThreeWayAgreementOnRandomSixBySix) {
  oracle::Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    const Q a = random_square(rng, 6);
    const Rational l = det_laplace(a);
    EXPECT_EQ(det_schur(a), l);
    EXPECT_EQ(det_turing(a), l);
    EXPECT_EQ(turing(a).det(), l);
  }
}

TEST(Determinant, AgreesWithLeibnizOracle) {
  oracle::Rng rng(62);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 10; ++t) {
      const Q a = random_square(rng, n > 1 ? n : 2).block(0, 0, n, n);
      EXPECT_EQ(det_schur(a), oracle::det_leibniz(a));
    }
}

TEST(Determinant, Multiplicative) {
  oracle::Rng rng(63);
  for (int t = 0; t < 100; ++t) {
    const Q a = random_square(rng, 4), b = random_square(rng, 4);
    EXPECT_EQ(det_schur(Q(a * b)), det_schur(a) * det_schur(b));
  }
}

TEST(Determinant, TransposeTriangularAndRowSwap) {
  oracle::Rng rng(64);
  for (int t = 0; t < 50; ++t) {
    Q a = random_square(rng, 5);
    EXPECT_EQ(det_schur(a.transpose()), det_schur(a));
    Q u = a;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < i; ++j) u(i, j) = Rational(0);
    Rational diag(1);
    for (std::size_t i = 0; i < 5; ++i) diag = diag * u(i, i);
    EXPECT_EQ(det_schur(u), diag);
    Q swapped = a;
    swapped.swap_rows(0, 3);
    EXPECT_EQ(det_schur(swapped), -det_schur(a));
  }
}

TEST(Determinant, GaussianEntries) {
  const Matrix<GaussianRational> a{{GaussianRational(1, 1), GaussianRational(2)}, {GaussianRational(0, 1), GaussianRational(3, -1)}};
  const GaussianRational expect = GaussianRational(1, 1) * GaussianRational(3, -1) - GaussianRational(0, 2);
  EXPECT_EQ(det_laplace(a), expect);
  EXPECT_EQ(det_schur(a), expect);
  EXPECT_EQ(det_turing(a), expect);
}

TEST(Determinant, PolynomialEntries) {
  const Poly z = Poly::variable("z");
  const Matrix<Poly> m{{z, Poly(1)}, {Poly(1), z}};
  EXPECT_EQ(det_laplace(m), z * z - Poly(1));
}

TEST(TwoByTwo, ClosedForms) {
  const Q a{{1, 2}, {3, 4}};
  EXPECT_EQ(det2x2(a), Rational(-2));
  EXPECT_EQ(inv2x2(a), (Q{{-2, 1}, {Rational(3, 2), Rational(-1, 2)}}));
  EXPECT_EQ(inv2x2(a), oracle::adjugate_inverse(a));
  EXPECT_EQ(det2x2(Q::identity(2)), Rational(1));
  EXPECT_EQ(inv2x2(Q::identity(2)), Q::identity(2));
  EXPECT_EQ(code_of([] { inv2x2(Q{{1, 2}, {2, 4}}); }), ErrorCode::Singular);
}

TEST(Inverse, ExamMatrixIsUnimodular) {
  const Q inv = inverse_exact(eq2());
  const Q expect{{1, -1, -1}, {-1, 2, 2}, {1, -2, -1}};
  EXPECT_EQ(oracle::adjugate_inverse(eq2()), expect);
  EXPECT_EQ(inv, expect);
  EXPECT_EQ(eq2() * inv, Q::identity(3));
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse_exact(Q::identity(3)), Q::identity(3));
  EXPECT_EQ(inverse_exact(Q{{2, 0}, {0, 4}}), (Q{{Rational(1, 2), 0}, {0, Rational(1, 4)}}));
  try {
    inverse_exact(Q{{1, 2}, {2, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
    EXPECT_EQ(e.detail().at("rank"), "1");
  }
}

TEST(Inverse, AgreesWithAdjugateOracle) {
  oracle::Rng rng(65);
  for (int t = 0; t < 50; ++t) {
    const Q a = oracle::random_rational(rng, 4, 4);
    if (oracle::det_leibniz(a).is_zero()) continue;
    const Q inv = inverse_exact(a);
    EXPECT_EQ(inv, oracle::adjugate_inverse(a));
    EXPECT_EQ(inv * a, Q::identity(4));
  }
}

TEST(Cramer, CoefficientSystem) {
  const Q a{{3, 4}, {2, -8}}, b{{7}, {1}};
  EXPECT_EQ(cramer_solve(a, b), *solve(a, b).x);
  EXPECT_EQ(cramer_solve(Q::identity(3), Q{{1}, {2}, {3}}), (Q{{1}, {2}, {3}}));
  EXPECT_EQ(code_of([] { cramer_solve(Q{{1, 2}, {2, 4}}, Q{{1}, {1}}); }), ErrorCode::Singular);
}

TEST(Cramer, AgreesWithLuSolve) {
  oracle::Rng rng(66);
  for (int t = 0; t < 50; ++t) {
    const Q a = oracle::random_rational(rng, 4, 4), b = oracle::random_rational(rng, 4, 1);
    if (oracle::det_leibniz(a).is_zero()) continue;
    EXPECT_EQ(cramer_solve(a, b), *solve(a, b, SolveMethod::lu).x);
  }
}

TEST(Symbolic, TermCountsAreFactorials) {
  const std::size_t factorial[] = {1, 1, 2, 6, 24, 120};
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(symbolic_det_termcount(n).terms, factorial[n]) << n;
  EXPECT_EQ(code_of([] { symbolic_det_termcount(6); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { symbolic_det_termcount(0); }), ErrorCode::OutOfRange);
}
