#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ehd/dofmap.hpp"

using namespace ehd;

namespace {
std::shared_ptr<const Mesh> square(int n) { return std::make_shared<const Mesh>(Mesh::unit_square(n)); }
}  // namespace

class DofCounts : public ::testing::TestWithParam<int> {};

TEST_P(DofCounts, MatchSpaceFormulas) {
  const int n = GetParam();
  auto mesh = square(n);
  EXPECT_EQ(DofMap(mesh, SpaceKind::ScalarP1).n_dofs(), (n + 1) * (n + 1));
  EXPECT_EQ(DofMap(mesh, SpaceKind::ScalarP2).n_dofs(), (2 * n + 1) * (2 * n + 1));
  EXPECT_EQ(DofMap(mesh, SpaceKind::VectorP2).n_dofs(), 2 * (2 * n + 1) * (2 * n + 1));
  EXPECT_EQ(DofMap(mesh, SpaceKind::ScalarP2).boundary_dofs().size(), 8u * n);
  EXPECT_EQ(DofMap(mesh, SpaceKind::VectorP2).boundary_dofs().size(), 16u * n);
  EXPECT_EQ(DofMap(mesh, SpaceKind::ScalarP1).boundary_dofs().size(), 4u * n);
}

INSTANTIATE_TEST_SUITE_P(Sizes, DofCounts, ::testing::Values(1, 2, 5, 16));

TEST(DofMap, BoundaryNodesLieOnTheBoundary) {
  DofMap d(square(6), SpaceKind::ScalarP2);
  int flagged = 0;
  for (int i = 0; i < d.n_nodes(); ++i) {
    const Point& p = d.node(i);
    const bool on = p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
    EXPECT_EQ(on, d.is_boundary_node(i)) << i;
    flagged += d.is_boundary_node(i);
  }
  EXPECT_EQ(flagged, 8 * 6);
}

TEST(DofMap, P2NodesAreVerticesThenSortedEdgeMidpoints) {
  auto mesh = square(3);
  DofMap d(mesh, SpaceKind::ScalarP2);
  for (int v = 0; v < mesh->n_vertices(); ++v) {
    EXPECT_EQ(d.node(v).x, mesh->vertices()[v].x);
    EXPECT_EQ(d.node(v).y, mesh->vertices()[v].y);
  }
  for (int e = 0; e < mesh->n_edges(); ++e) {
    const auto& a = mesh->vertices()[mesh->edges()[e][0]];
    const auto& b = mesh->vertices()[mesh->edges()[e][1]];
    EXPECT_NEAR(d.node(mesh->n_vertices() + e).x, (a.x + b.x) / 2, 1e-15);
    EXPECT_NEAR(d.node(mesh->n_vertices() + e).y, (a.y + b.y) / 2, 1e-15);
  }
}

TEST(DofMap, CellNodesAgreeWithReferenceNodes) {
  auto mesh = square(4);
  DofMap d(mesh, SpaceKind::ScalarP2);
  for (int t = 0; t < mesh->n_triangles(); ++t) {
    const auto map = mesh->affine_map(t);
    const auto nodes = d.cell_nodes(t);
    ASSERT_EQ(nodes.size(), 6u);
    for (int k = 0; k < 6; ++k) {
      const auto ref = d.element().node(k);
      const Point p = map.apply(ref[0], ref[1]);
      EXPECT_NEAR(p.x, d.node(nodes[k]).x, 1e-15);
      EXPECT_NEAR(p.y, d.node(nodes[k]).y, 1e-15);
    }
  }
}

TEST(DiscreteField, P2InterpolantReproducesQuadraticsEverywhere) {
  auto space = std::make_shared<const DofMap>(square(3), SpaceKind::ScalarP2);
  auto f = [](double x, double y) { return 1.0 + 2 * x - y + 3 * x * y - x * x + 0.5 * y * y; };
  const auto u = DiscreteField::interpolate(space, f);
  const auto map = space->mesh().affine_map(5);
  const Point p = map.apply(0.2, 0.3);
  EXPECT_NEAR(u.value(5, 0.2, 0.3), f(p.x, p.y), 1e-14);
  const auto g = u.gradient(5, 0.2, 0.3);
  EXPECT_NEAR(g[0], 2 + 3 * p.y - 2 * p.x, 1e-12);
  EXPECT_NEAR(g[1], -1 + 3 * p.x + p.y, 1e-12);
  // integral of f over the unit square: 1 + 1 - 1/2 + 3/4 - 1/3 + 1/6
  EXPECT_NEAR(u.integral(), 1.0 + 1.0 - 0.5 + 0.75 - 1.0 / 3 + 1.0 / 6, 1e-14);
}

TEST(DiscreteField, VectorInterpolantDivergence) {
  auto space = std::make_shared<const DofMap>(square(2), SpaceKind::VectorP2);
  const auto u = DiscreteField::interpolate(
      space, [](double x, double y) -> std::array<double, 2> { return {x * x, -2 * x * y + y}; });
  // div = 2x - 2x + 1
  for (int t = 0; t < space->mesh().n_triangles(); ++t) {
    EXPECT_NEAR(u.divergence(t, 0.3, 0.3), 1.0, 1e-12);
  }
  EXPECT_NEAR(u.value(0, 0.0, 0.0, 1), 0.0, 1e-15);
}

TEST(DiscreteField, SizeMismatchThrows) {
  auto space = std::make_shared<const DofMap>(square(2), SpaceKind::ScalarP1);
  EXPECT_THROW(DiscreteField(space, std::vector<double>(3)), std::invalid_argument);
}
