#include <gtest/gtest.h>

#include "mechlin/scalar/ncexpr.hpp"
#include "mechlin/scalar/ratfunc.hpp"
#include "mechlin/scalar/symexpr.hpp"
#include "support/oracles.hpp"

using namespace mechlin;

namespace {

Poly P(const char* s) { return Poly::parse(s, "z"); }

NCExpr B(const char* s) { return NCExpr::symbol(s); }

NCExpr random_nc(oracle::Rng& rng) {
  static const char* syms[] = {"B11", "B12", "B21", "B22"};
  NCTermList raw;
  const int terms = static_cast<int>(rng.integer(0, 4));
  for (int t = 0; t < terms; ++t) {
    Word w;
    const int len = static_cast<int>(rng.integer(0, 4));
    for (int k = 0; k < len; ++k) w.push_back({syms[rng.integer(0, 3)], rng.coin(3) ? -1 : 1});
    raw.emplace_back(rng.rational(-3, 3, 2), w);
  }
  return NCExpr::from_terms(raw);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  const Rational half(2, 4);
  EXPECT_EQ(half.num(), 1);
  EXPECT_EQ(half.den(), 2);
  const Rational neg(3, -6);
  EXPECT_EQ(neg.num(), -1);
  EXPECT_EQ(neg.den(), 2);
  EXPECT_EQ(Rational(0, -7).den(), 1);
  EXPECT_EQ(Rational(-4, 2).to_string(), "-2");
  EXPECT_EQ(Rational(-4, 6).to_string(), "-2/3");
}

TEST(Rational, DivisionByZeroIsAnError) {
  try {
    (void)(Rational(3, 7) / Rational(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("-12/18"), Rational(-2, 3));
  EXPECT_EQ(Rational::parse("+5"), Rational(5));
  for (const char* bad : {"", "1/", "/2", "1.5", "1/-2", "a"}) EXPECT_THROW(Rational::parse(bad), Error) << bad;
  const Rational big = Rational::parse("123456789012345678901234567890/7");
  EXPECT_EQ(Rational::parse(big.to_string()), big);
}

TEST(Rational, NoFixedWidthOverflow) {
  Rational x(1);
  for (int k = 0; k < 100; ++k) x = x * Rational(1000000007);
  for (int k = 0; k < 100; ++k) x = x / Rational(1000000007);
  EXPECT_EQ(x, Rational(1));
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  oracle::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const Rational a = rng.rational(), b = rng.rational(), c = rng.rational();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a - a, Rational(0));
    if (!a.is_zero()) EXPECT_EQ(a * (Rational(1) / a), Rational(1));
  }
}

TEST(Gaussian, ParseForms) {
  EXPECT_EQ(GaussianRational::parse("3"), GaussianRational(Rational(3)));
  EXPECT_EQ(GaussianRational::parse("2i"), GaussianRational(Rational(0), Rational(2)));
  EXPECT_EQ(GaussianRational::parse("-i"), GaussianRational(Rational(0), Rational(-1)));
  EXPECT_EQ(GaussianRational::parse("1/2+3/4i"), GaussianRational(Rational(1, 2), Rational(3, 4)));
  EXPECT_EQ(GaussianRational::parse("1-i"), GaussianRational(Rational(1), Rational(-1)));
  EXPECT_EQ(GaussianRational::parse("-1/3-2/5i"), GaussianRational(Rational(-1, 3), Rational(-2, 5)));
}

TEST(Gaussian, TextRoundTrip) {
  oracle::Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    GaussianRational g(rng.coin(4) ? Rational(0) : rng.rational(), rng.coin(4) ? Rational(0) : rng.rational());
    EXPECT_EQ(GaussianRational::parse(g.to_string()), g) << g.to_string();
  }
}

TEST(Gaussian, FieldAndConjugation) {
  oracle::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    GaussianRational a(rng.rational(), rng.rational()), b(rng.rational(), rng.rational());
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(Rational(-1)));
}

TEST(Poly, Arithmetic) {
  EXPECT_EQ(P("z+1") * P("z-1"), P("z^2-1"));
  EXPECT_EQ(Poly::gcd(P("z^2-1"), P("z-1")), P("z-1"));
  EXPECT_EQ(Poly::gcd(P("2z^2-2"), P("4z+4")), P("z+1"));
  EXPECT_EQ(P("z^3+2z^2+z+1").eval(GaussianRational(0)), GaussianRational(1));
  EXPECT_EQ(P("z^2+1").eval(GaussianRational::i()), GaussianRational(0));
  EXPECT_EQ(P("z^3").derivative(), P("3z^2"));
  EXPECT_EQ(P("z^2").compose(P("z+1")), P("z^2+2z+1"));
}

TEST(Poly, ParsePrintRoundTrip) {
  for (const char* s : {"z^2-3z+2", "-z", "1/2z^3-7", "(1+2i)z+(i)", "0", "5"}) {
    const Poly p = P(s);
    EXPECT_EQ(P(p.to_string().c_str()), p) << s;
  }
  EXPECT_EQ(P("z^2-3z+2").to_string(), "z^2-3z+2");
}

TEST(Poly, VariableMismatch) {
  try {
    (void)(Poly::variable("x") + Poly::variable("y"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VariableMismatch);
  }
}

TEST(Poly, DivisionByZeroPolynomial) {
  try {
    Poly::divmod(P("z"), Poly());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Poly, DivmodRoundTripOnRandomPairs) {
  oracle::Rng rng(14);
  auto random_poly = [&](int deg) {
    std::vector<GaussianRational> c;
    for (int k = 0; k <= deg; ++k) c.emplace_back(rng.rational(-5, 5, 4));
    if (c.back().is_zero()) c.back() = GaussianRational(1);
    return Poly("z", c);
  };
  for (int t = 0; t < 200; ++t) {
    const Poly p = random_poly(static_cast<int>(rng.integer(0, 8)));
    const Poly q = random_poly(static_cast<int>(rng.integer(0, 8)));
    auto [quot, rem] = Poly::divmod(p, q);
    EXPECT_EQ(q * quot + rem, p);
    EXPECT_TRUE(rem.is_zero() || rem.degree() < q.degree());
  }
}

TEST(RatFunc, CanonicalForm) {
  const RatFunc r(P("z^2-1"), P("2z-2"));
  EXPECT_EQ(r.num(), P("1/2z+1/2"));
  EXPECT_EQ(r.den(), P("1"));
  const RatFunc s(P("z"), P("3z+3"));
  EXPECT_TRUE(s.den().is_monic());
  EXPECT_EQ(s + RatFunc(P("1")), RatFunc(P("4/3z+1"), P("z+1")));
  EXPECT_EQ(s / s, RatFunc(1));
}

TEST(RatFunc, EvalAtPole) {
  const RatFunc r(P("1"), P("z-2"));
  EXPECT_EQ(r.eval(GaussianRational(3)), GaussianRational(1));
  try {
    r.eval(GaussianRational(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(NCExpr, AdjacentInverseCancels) {
  const NCExpr e = B("B21") * B("B11").inverse() * B("B11");
  EXPECT_EQ(e, B("B21"));
  EXPECT_TRUE((B("B11") * B("B12") - B("B11") * B("B12")).is_zero());
}

TEST(NCExpr, IrreducibleWordKeepsOrder) {
  const NCExpr e = B("B21") * B("B11").inverse() * B("B12");
  EXPECT_EQ(nc_normalize(e), e);
  EXPECT_EQ(e.to_string(), "B21*B11^-1*B12");
}

TEST(NCExpr, NotCommutative) {
  EXPECT_NE(B("B11") * B("B12"), B("B12") * B("B11"));
}

TEST(NCExpr, InverseOfSumIsRejected) {
  try {
    (B("B11") + B("B12")).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonInvertible);
  }
}

TEST(NCExpr, NormalizeIsIdempotentAndLinear) {
  oracle::Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const NCExpr a = random_nc(rng), b = random_nc(rng);
    EXPECT_EQ(nc_normalize(nc_normalize(a)), nc_normalize(a));
    EXPECT_EQ(nc_normalize(a + b), nc_normalize(nc_normalize(a) + nc_normalize(b)));
  }
}

TEST(NCExpr, MultiplicationIsAssociative) {
  oracle::Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    const NCExpr a = random_nc(rng), b = random_nc(rng), c = random_nc(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(NCExpr, RawTermsNormalize) {
  const NCTermList raw{{Rational(2), {{"x", 1}, {"x", -1}}}, {Rational(-2), {}}, {Rational(1), {{"y", 1}}}};
  EXPECT_EQ(nc_normalize(raw), NCExpr::symbol("y"));
}

TEST(SymExpr, CommutativeProducts) {
  const SymExpr a = SymExpr::symbol("a"), b = SymExpr::symbol("b");
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a * b - b * a).term_count(), 0u);
  EXPECT_EQ((a + b) * (a - b), a * a - b * b);
  EXPECT_EQ(((a + b) * (a + b)).term_count(), 3u);
}
