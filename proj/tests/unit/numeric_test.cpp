#include <gtest/gtest.h>

#include <cmath>

#include "mechlin/companion.hpp"
#include "mechlin/determinants.hpp"
#include "mechlin/numeric/eigen.hpp"
#include "mechlin/numeric/svd.hpp"
#include "mechlin/special.hpp"
#include "support/oracles.hpp"

using namespace mechlin;

using D = Matrix<double>;

namespace {

double diff(const D& a, const D& b) { return oracle::max_abs(D(a - b)); }

std::vector<cdouble> sorted(std::vector<cdouble> v) {
  std::sort(v.begin(), v.end(), [](cdouble a, cdouble b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

std::vector<cdouble> column(const Matrix<cdouble>& m, std::size_t j) {
  std::vector<cdouble> x(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) x[i] = m(i, j);
  return x;
}

D svd_product(const SVDResult& s) {
  D sig(s.sigma.size(), s.sigma.size());
  for (std::size_t k = 0; k < s.sigma.size(); ++k) sig(k, k) = s.sigma[k];
  return s.U * sig * s.V.transpose();
}

}  // namespace

TEST(Hessenberg, AlreadyHessenberg) {
  const D a{{1, 2, 3}, {4, 5, 6}, {0, 7, 8}};
  const auto h = hessenberg(a);
  EXPECT_LE(diff(h.H, a), 1e-15);
  EXPECT_LE(diff(h.Q, D::identity(3)), 1e-15);
}

TEST(Hessenberg, RandomResidualAndShape) {
  oracle::Rng rng(81);
  for (int t = 0; t < 20; ++t) {
    const D a = oracle::random_double(rng, 5, 5);
    const auto h = hessenberg(a);
    EXPECT_LE(diff(h.Q.transpose() * a * h.Q, h.H) / frobenius_norm(a), 1e-12);
    EXPECT_LE(diff(h.Q.transpose() * h.Q, D::identity(5)), 1e-12);
    for (std::size_t i = 2; i < 5; ++i)
      for (std::size_t j = 0; j + 1 < i; ++j) EXPECT_EQ(h.H(i, j), 0.0);
  }
}

TEST(Hessenberg, SymmetricBecomesTridiagonal) {
  oracle::Rng rng(82);
  const D g = oracle::random_double(rng, 6, 6);
  const D a = g + g.transpose();
  const auto h = hessenberg(a);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 2; j < 6; ++j) EXPECT_LE(std::abs(h.H(i, j)), 1e-12 * frobenius_norm(a));
}

TEST(Eig, Rotation) {
  const auto r = eig_qr(D{{0, -1}, {1, 0}});
  const auto ev = sorted(r.eigenvalues);
  EXPECT_LE(std::abs(ev[0] - cdouble(0, -1)), 1e-12);
  EXPECT_LE(std::abs(ev[1] - cdouble(0, 1)), 1e-12);
}

TEST(Eig, Gallery3AgainstExactCharpoly) {
  // The exact characteristic polynomial of gallery3 fixes the reference values.
  const Poly p = charpoly(gallery3());
  ASSERT_EQ(p, Poly::parse("z^3-6z^2+11z-6", "z"));
  const auto [roots, rest] = rational_roots(p);
  std::vector<cdouble> want;
  for (const auto& r : roots) want.emplace_back(r.to_double(), 0.0);
  const auto got = sorted(eig_qr(gallery3_double()).eigenvalues);
  want = sorted(want);
  ASSERT_EQ(got.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(std::abs(got[k] - want[k]), 1e-8);
}

TEST(Eig, RepeatedEigenvalue) {
  for (const auto& l : eig_qr(D{{5, 0, 0}, {0, 5, 0}, {0, 0, 5}}).eigenvalues) EXPECT_LE(std::abs(l - 5.0), 1e-14);
}

TEST(Eig, BackwardErrorOnRandomTenByTen) {
  oracle::Rng rng(83);
  for (int t = 0; t < 50; ++t) {
    const D a = oracle::random_double(rng, 10, 10);
    const auto r = eig_qr(a, true);
    ASSERT_TRUE(r.eigenvectors.has_value());
    const auto ac = to_complex_matrix(a);
    for (std::size_t k = 0; k < 10; ++k) EXPECT_LE(backward_error_eig(ac, r.eigenvalues[k], column(*r.eigenvectors, k)), 1e-10);
  }
}

TEST(Eig, EigenvectorsArePhased) {
  const auto r = eig_qr(D{{2, 1}, {1, 2}}, true);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto x = column(*r.eigenvectors, k);
    const auto& big = std::abs(x[0]) >= std::abs(x[1]) - 1e-12 ? x[0] : x[1];
    EXPECT_GT(big.real(), 0.0);
    EXPECT_NEAR(big.imag(), 0.0, 1e-14);
  }
}

TEST(Eig, TraceAndDeterminantOfIntegerMatrices) {
  oracle::Rng rng(84);
  for (int t = 0; t < 30; ++t) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 8));
    const Matrix<Rational> q = oracle::random_integer(rng, n, n);
    const auto r = eig_qr(to_double(q));
    cdouble sum = 0.0, prod = 1.0;
    for (const auto& l : r.eigenvalues) {
      sum += l;
      prod *= l;
    }
    Rational tr(0);
    for (std::size_t i = 0; i < n; ++i) tr = tr + q(i, i);
    const double det = det_schur(q).to_double();
    EXPECT_LE(std::abs(sum - tr.to_double()), 1e-8 * std::max(1.0, std::abs(tr.to_double())));
    EXPECT_LE(std::abs(prod - det), 1e-8 * std::max(1.0, std::abs(det)));
  }
}

TEST(Eig, CompanionRootsSatisfyPolynomial) {
  oracle::Rng rng(85);
  for (int t = 0; t < 30; ++t) {
    const int deg = static_cast<int>(rng.integer(1, 8));
    std::vector<GaussianRational> c;
    double norm = 1.0;
    for (int k = 0; k < deg; ++k) {
      const Rational x = rng.rational(-5, 5, 3);
      norm += x.to_double() * x.to_double();
      c.emplace_back(x);
    }
    c.emplace_back(1);
    const Poly p("z", c);
    const auto r = eig_qr(to_double(frobenius_companion(p).A));
    for (const auto& l : r.eigenvalues) {
      cdouble v = 0.0;
      for (int k = deg; k >= 0; --k) v = v * l + c[static_cast<std::size_t>(k)].re().to_double();
      EXPECT_LE(std::abs(v), 1e-8 * std::sqrt(norm) * std::pow(std::max(1.0, std::abs(l)), deg)) << p.to_string();
    }
  }
}

TEST(Eig, IterationCap) {
  oracle::Rng rng(86);
  const D a = oracle::random_double(rng, 6, 6);
  EXPECT_THROW(eig_qr(a, false, 1), Error);
  EXPECT_NO_THROW(eig_qr(a, false, 0));
}

TEST(Svd, Examples) {
  const auto s = svd_jacobi(D{{3, 0}, {0, 4}});
  EXPECT_NEAR(s.sigma[0], 4.0, 1e-15);
  EXPECT_NEAR(s.sigma[1], 3.0, 1e-15);
  const double c = std::cos(0.3), sn = std::sin(0.3);
  for (double x : singular_values(D{{c, -sn}, {sn, c}})) EXPECT_NEAR(x, 1.0, 1e-12);
  const auto r1 = singular_values(D{{1}, {2}, {3}} * D{{4, 5, 6, 7}});
  EXPECT_LE(r1[1], 1e-12 * r1[0]);
}

TEST(Svd, ResidualsOnRandomMatrices) {
  oracle::Rng rng(87);
  for (int t = 0; t < 50; ++t) {
    const auto m = static_cast<std::size_t>(rng.integer(1, 8)), n = static_cast<std::size_t>(rng.integer(1, 8));
    const D a = oracle::random_double(rng, m, n);
    const auto s = svd_jacobi(a);
    const double na = frobenius_norm(a);
    const std::size_t k = std::min(m, n);
    EXPECT_LE(diff(svd_product(s), a), 1e-12 * na);
    EXPECT_LE(diff(s.U.transpose() * s.U, D::identity(k)), 1e-12 * std::max(1.0, na));
    EXPECT_LE(diff(s.V.transpose() * s.V, D::identity(k)), 1e-12 * std::max(1.0, na));
    for (std::size_t i = 1; i < k; ++i) EXPECT_GE(s.sigma[i - 1], s.sigma[i]);
  }
}

TEST(Svd, TransposeAndScaling) {
  oracle::Rng rng(88);
  for (int t = 0; t < 20; ++t) {
    const D a = oracle::random_double(rng, 5, 3);
    const auto s = singular_values(a), st = singular_values(a.transpose());
    const auto sc = singular_values(D(-2.5 * a));
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(s[i], st[i], 1e-12);
      EXPECT_NEAR(sc[i], 2.5 * s[i], 1e-12);
    }
  }
}

TEST(Svd, RankOfRankDeficientIntegerMatrices) {
  oracle::Rng rng(89);
  for (int t = 0; t < 50; ++t) {
    const auto r = static_cast<std::size_t>(rng.integer(1, 4));
    const auto q = oracle::random_integer(rng, 6, r) * oracle::random_integer(rng, r, 5);
    EXPECT_EQ(numeric_rank(to_double(q)), oracle::rank_of_rref(oracle::rref(q)));
  }
}

TEST(Conditioning, Condition) {
  EXPECT_NEAR(condition_number(D::identity(4)), 1.0, 1e-15);
  EXPECT_NEAR(condition_number(D{{1, 0}, {0, 1e-6}}) / 1e6, 1.0, 1e-10);
  EXPECT_TRUE(std::isinf(condition_number(D{{1, 2}, {2, 4}})));
}

TEST(Conditioning, Gallery3EigenvaluesAreIllConditioned) {
  const D g = gallery3_double();
  for (const auto& l : eig_qr(g).eigenvalues) EXPECT_GT(eig_condition(g, l), 100.0);
}

TEST(Conditioning, Gallery3Sensitivity) {
  const auto base = sorted(gallery3_sensitivity(0.0).eigenvalues);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(std::abs(base[k] - double(k + 1)), 1e-8);
  for (double t : {1e-6, -1e-6}) {
    const auto moved = gallery3_sensitivity(t).eigenvalues;
    double drift = 0.0;
    for (const auto& l : moved) {
      double nearest = 1e300;
      for (const auto& b : base) nearest = std::min(nearest, std::abs(l - b));
      drift = std::max(drift, nearest);
    }
    EXPECT_GT(drift, 100 * std::abs(t)) << t;
  }
}
