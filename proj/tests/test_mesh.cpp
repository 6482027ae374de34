#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "ehd/mesh.hpp"

using ehd::Mesh;

class MeshCounts : public ::testing::TestWithParam<int> {};

TEST_P(MeshCounts, EntityCountsMatchStructuredFormulas) {
  const int n = GetParam();
  const Mesh m = Mesh::unit_square(n);
  EXPECT_EQ(m.n_vertices(), (n + 1) * (n + 1));
  EXPECT_EQ(m.n_triangles(), 2 * n * n);
  EXPECT_EQ(m.n_edges(), 3 * n * n + 2 * n);
  EXPECT_EQ(static_cast<int>(m.boundary_edges().size()), 4 * n);
  // Euler characteristic of a disk
  EXPECT_EQ(m.n_vertices() - m.n_edges() + m.n_triangles(), 1);
}

INSTANTIATE_TEST_SUITE_P(Sizes, MeshCounts, ::testing::Values(1, 2, 3, 8, 17));

TEST(Mesh, RejectsNonPositiveDivisions) {
  EXPECT_THROW(Mesh::unit_square(0), std::invalid_argument);
  EXPECT_THROW(Mesh::unit_square(-3), std::invalid_argument);
}

TEST(Mesh, TrianglesAreCounterClockwiseWithEqualArea) {
  const Mesh m = Mesh::unit_square(6);
  double total = 0.0;
  for (int t = 0; t < m.n_triangles(); ++t) {
    EXPECT_NEAR(m.signed_area(t), 0.5 / 36.0, 1e-15);
    total += m.signed_area(t);
  }
  EXPECT_NEAR(total, 1.0, 1e-13);
}

TEST(Mesh, CornerVerticesAreExact) {
  const Mesh m = Mesh::unit_square(7);
  for (const auto& p : m.vertices()) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.x, 1.0);
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.y, 1.0);
  }
  EXPECT_EQ(m.vertices().front().x, 0.0);
  EXPECT_EQ(m.vertices().back().x, 1.0);
  EXPECT_EQ(m.vertices().back().y, 1.0);
}

TEST(Mesh, EdgesAreSortedUniquePairs) {
  const Mesh m = Mesh::unit_square(5);
  std::set<std::array<int, 2>> seen;
  for (std::size_t e = 0; e < m.edges().size(); ++e) {
    const auto& ed = m.edges()[e];
    EXPECT_LT(ed[0], ed[1]);
    EXPECT_TRUE(seen.insert(ed).second);
    if (e > 0) EXPECT_LT(m.edges()[e - 1], ed);
  }
}

TEST(Mesh, TriangleEdgesMatchLocalVertexPairs) {
  const Mesh m = Mesh::unit_square(4);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const auto& v = m.triangles()[t];
    const auto& te = m.triangle_edges(t);
    for (int k = 0; k < 3; ++k) {
      const int a = v[k], b = v[(k + 1) % 3];
      const auto& e = m.edges()[te[k]];
      EXPECT_EQ(e[0], std::min(a, b));
      EXPECT_EQ(e[1], std::max(a, b));
    }
  }
}

TEST(Mesh, BoundaryEdgesHaveOneTriangleInteriorTwo) {
  const Mesh m = Mesh::unit_square(6);
  std::set<int> boundary;
  for (const auto& be : m.boundary_edges()) boundary.insert(be.edge);
  for (int e = 0; e < m.n_edges(); ++e) {
    const auto& tris = m.edge_triangles(e);
    EXPECT_GE(tris[0], 0);
    if (boundary.count(e)) {
      EXPECT_EQ(tris[1], -1);
    } else {
      EXPECT_GE(tris[1], 0);
    }
  }
}

TEST(Mesh, BoundaryNormalsAreUnitAndOutward) {
  const Mesh m = Mesh::unit_square(5);
  for (const auto& be : m.boundary_edges()) {
    const auto& e = m.edges()[be.edge];
    const auto& a = m.vertices()[e[0]];
    const auto& b = m.vertices()[e[1]];
    const ehd::Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    const ehd::Point c = m.centroid(be.triangle);
    EXPECT_NEAR(std::hypot(be.normal.x, be.normal.y), 1.0, 1e-15);
    EXPECT_LT(be.normal.x * (c.x - mid.x) + be.normal.y * (c.y - mid.y), 0.0);
    // edge lies on the boundary of the unit square
    const bool on_side = (a.x == 0 && b.x == 0) || (a.x == 1 && b.x == 1) ||
                         (a.y == 0 && b.y == 0) || (a.y == 1 && b.y == 1);
    EXPECT_TRUE(on_side);
  }
}

TEST(Mesh, AffineMapSendsReferenceVerticesToTriangle) {
  const Mesh m = Mesh::unit_square(3);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const auto map = m.affine_map(t);
    const auto& v = m.triangles()[t];
    const double ref[3][2] = {{0, 0}, {1, 0}, {0, 1}};
    for (int k = 0; k < 3; ++k) {
      const auto p = map.apply(ref[k][0], ref[k][1]);
      EXPECT_NEAR(p.x, m.vertices()[v[k]].x, 1e-15);
      EXPECT_NEAR(p.y, m.vertices()[v[k]].y, 1e-15);
    }
    EXPECT_NEAR(map.abs_det(), 2.0 * m.signed_area(t), 1e-15);
    // J^{-T} J^T = I
    const auto& j = map.jacobian;
    const auto it = map.inverse_transpose();
    EXPECT_NEAR(it[0] * j[0] + it[1] * j[1], 1.0, 1e-13);
    EXPECT_NEAR(it[0] * j[2] + it[1] * j[3], 0.0, 1e-13);
  }
}

TEST(Mesh, TextDumpHasOneLinePerEntity) {
  const Mesh m = Mesh::unit_square(2);
  std::ostringstream os;
  m.write_text(os);
  int lines = 0;
  for (char c : os.str()) lines += c == '\n';
  EXPECT_EQ(lines, m.n_vertices() + m.n_triangles());
}
