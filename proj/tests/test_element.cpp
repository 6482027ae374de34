#include <gtest/gtest.h>

#include <random>

#include "ehd/element.hpp"
#include "ehd/quadrature.hpp"
#include "oracles.hpp"

using ehd::ReferenceElement;

double integrate_monomial(const ehd::QuadratureRule& r, int a, int b) {
  double s = 0.0;
  for (int q = 0; q < r.size(); ++q) s += r.weights[q] * std::pow(r.xi(q), a) * std::pow(r.eta(q), b);
  return s;
}

TEST(Quadrature, DegreeFiveIsExactOnAllMonomialsUpToFive) {
  const auto r = ehd::quadrature(5);
  EXPECT_EQ(r.size(), 7);
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; a + b <= 5; ++b) {
      EXPECT_NEAR(integrate_monomial(r, a, b), oracle::reference_monomial(a, b), 1e-13)
          << "x^" << a << " y^" << b;
    }
  }
}

TEST(Quadrature, DegreeFiveIsNotExactAtDegreeSix) {
  const auto r = ehd::quadrature(5);
  double worst = 0.0;
  for (int a = 0; a <= 6; ++a) {
    worst = std::max(worst, std::abs(integrate_monomial(r, a, 6 - a) - oracle::reference_monomial(a, 6 - a)));
  }
  EXPECT_GT(worst, 1e-8);
}

TEST(Quadrature, DegreeTwoMidpointRule) {
  const auto r = ehd::quadrature(2);
  EXPECT_EQ(r.size(), 3);
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; a + b <= 2; ++b) {
      EXPECT_NEAR(integrate_monomial(r, a, b), oracle::reference_monomial(a, b), 1e-15);
    }
  }
}

TEST(Quadrature, WeightsSumToReferenceAreaAndPointsAreBarycentric) {
  for (int d : {2, 5}) {
    const auto r = ehd::quadrature(d);
    double w = 0.0;
    for (int q = 0; q < r.size(); ++q) {
      w += r.weights[q];
      EXPECT_NEAR(r.points[q][0] + r.points[q][1] + r.points[q][2], 1.0, 1e-15);
    }
    EXPECT_NEAR(w, 0.5, 1e-15);
  }
}

TEST(Quadrature, UnsupportedDegreeThrows) {
  EXPECT_THROW(ehd::quadrature(3), std::invalid_argument);
  EXPECT_THROW(ehd::quadrature(0), std::invalid_argument);
}

class ElementDegree : public ::testing::TestWithParam<int> {};

TEST_P(ElementDegree, PartitionOfUnityAtRandomPoints) {
  const ReferenceElement el(GetParam());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 6> v{};
  std::array<std::array<double, 2>, 6> g{};
  for (int k = 0; k < 200; ++k) {
    double xi = u(rng), eta = u(rng);
    if (xi + eta > 1.0) {
      xi = 1.0 - xi;
      eta = 1.0 - eta;
    }
    el.values(xi, eta, v);
    el.gradients(xi, eta, g);
    double s = 0.0, gx = 0.0, gy = 0.0;
    for (int i = 0; i < el.n_local_dofs(); ++i) {
      s += v[i];
      gx += g[i][0];
      gy += g[i][1];
    }
    EXPECT_NEAR(s, 1.0, 1e-14);
    EXPECT_NEAR(gx, 0.0, 1e-13);
    EXPECT_NEAR(gy, 0.0, 1e-13);
  }
}

TEST_P(ElementDegree, NodalBasisIsKroneckerDelta) {
  const ReferenceElement el(GetParam());
  std::array<double, 6> v{};
  for (int j = 0; j < el.n_local_dofs(); ++j) {
    const auto node = el.node(j);
    el.values(node[0], node[1], v);
    for (int i = 0; i < el.n_local_dofs(); ++i) EXPECT_NEAR(v[i], i == j ? 1.0 : 0.0, 1e-15);
  }
}

TEST_P(ElementDegree, GradientsMatchFiniteDifferences) {
  const ReferenceElement el(GetParam());
  const double h = 1e-6;
  std::array<double, 6> vp{}, vm{};
  std::array<std::array<double, 2>, 6> g{};
  const double xi = 0.21, eta = 0.33;
  el.gradients(xi, eta, g);
  for (int dir = 0; dir < 2; ++dir) {
    el.values(xi + (dir == 0 ? h : 0), eta + (dir == 1 ? h : 0), vp);
    el.values(xi - (dir == 0 ? h : 0), eta - (dir == 1 ? h : 0), vm);
    for (int i = 0; i < el.n_local_dofs(); ++i) EXPECT_NEAR(g[i][dir], (vp[i] - vm[i]) / (2 * h), 1e-8);
  }
}

INSTANTIATE_TEST_SUITE_P(P1P2, ElementDegree, ::testing::Values(1, 2));

TEST(Element, P2NodeOrderIsVerticesThenEdgeMidpoints) {
  const ReferenceElement el(2);
  const std::array<std::array<double, 2>, 6> expected{
      {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}}};
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(el.node(i), expected[i]);
  }
}

TEST(Element, RejectsUnsupportedDegree) {
  EXPECT_THROW(ReferenceElement(3), std::invalid_argument);
}
