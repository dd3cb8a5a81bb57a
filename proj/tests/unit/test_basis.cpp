#include <gtest/gtest.h>

#include <cmath>

#include "aderdg/dg/basis.hpp"
#include "aderdg/error.hpp"

using namespace aderdg;

TEST(GaussLegendre, MidpointAndTwoPointRules) {
  auto [x1, w1] = gauss_legendre(1);
  ASSERT_EQ(x1.size(), 1u);
  EXPECT_DOUBLE_EQ(x1[0], 0.5);
  EXPECT_DOUBLE_EQ(w1[0], 1.0);
  auto [x2, w2] = gauss_legendre(2);
  EXPECT_NEAR(x2[0], 0.2113248654051871, 1e-15);
  EXPECT_NEAR(x2[1], 0.7886751345948129, 1e-15);
  EXPECT_NEAR(w2[0], 0.5, 1e-15);
  EXPECT_NEAR(w2[1], 0.5, 1e-15);
}

TEST(GaussLegendre, ExactForDegreeTwoNMinusOne) {
  for (int n = 1; n <= 16; ++n) {
    auto [x, w] = gauss_legendre(n);
    double sum = 0.0;
    for (double v : w) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-14) << n;
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += w[i] * std::pow(x[i], k);
      EXPECT_NEAR(q, 1.0 / (k + 1), 2e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussLegendre, RejectsUnsupportedCounts) {
  try {
    gauss_legendre(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedOrder);
  }
  EXPECT_THROW(gauss_legendre(17), Error);
}

class BasisDegree : public ::testing::TestWithParam<int> {};

TEST_P(BasisDegree, LagrangeProperty) {
  const auto& b = basis(GetParam());
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) EXPECT_NEAR(b.value(j, b.nodes()[i]), i == j ? 1.0 : 0.0, 1e-13);
}

TEST_P(BasisDegree, DifferentiationIsExactOnPolynomials) {
  const int N = GetParam();
  const auto& b = basis(N);
  for (int k = 0; k <= N; ++k)
    for (int i = 0; i < b.size(); ++i) {
      double d = 0.0;
      for (int j = 0; j < b.size(); ++j) d += b.diff(i, j) * std::pow(b.nodes()[j], k);
      const double exact = k == 0 ? 0.0 : k * std::pow(b.nodes()[i], k - 1);
      EXPECT_NEAR(d, exact, 1e-11) << "k=" << k;
    }
}

TEST_P(BasisDegree, PicardMatrixIntegratesFromZero) {
  const int N = GetParam();
  const auto& b = basis(N);
  for (int k = 0; k < N; ++k)  // x^(N+1) leaves the space
    for (int m = 0; m < b.size(); ++m) {
      double q = 0.0;
      for (int l = 0; l < b.size(); ++l) q += b.picard(m, l) * std::pow(b.nodes()[l], k);
      EXPECT_NEAR(q, std::pow(b.nodes()[m], k + 1) / (k + 1), 1e-13);
    }
}

TEST_P(BasisDegree, EndValuesAndWeakDerivative) {
  const int N = GetParam();
  const auto& b = basis(N);
  double l = 0.0, r = 0.0;
  for (int j = 0; j < b.size(); ++j) {
    l += b.left(j) * std::pow(b.nodes()[j], N);
    r += b.right(j) * std::pow(b.nodes()[j], N);
    EXPECT_NEAR(b.left(j), b.value(j, 0.0), 1e-13);
  }
  EXPECT_NEAR(l, N == 0 ? 1.0 : 0.0, 1e-12);
  EXPECT_NEAR(r, 1.0, 1e-12);
  for (int k = 0; k < b.size(); ++k)
    for (int a = 0; a < b.size(); ++a)
      EXPECT_NEAR(b.weak_diff(k, a), b.weights()[a] * b.diff(a, k) / b.weights()[k], 1e-12);
}

TEST_P(BasisDegree, InterpolationMatrixMatchesValues) {
  const auto& b = basis(GetParam());
  const std::vector<double> pts{0.0, 0.3, 1.0};
  const auto m = b.interpolation_matrix(pts);
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (int j = 0; j < b.size(); ++j) EXPECT_NEAR(m[p * b.size() + j], b.value(j, pts[p]), 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Degrees, BasisDegree, ::testing::Range(0, 8));

TEST(Basis, DegreeOutOfRange) { EXPECT_THROW(basis(16), Error); }
