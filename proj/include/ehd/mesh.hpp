#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace ehd {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Reference-to-physical map x = jacobian * xi + origin for one triangle.
struct AffineMap {
  std::array<double, 4> jacobian{};  // row-major [[a, b], [c, d]]
  Point origin;
  double det = 0.0;

  Point apply(double xi, double eta) const;
  double abs_det() const;
  /// J^{-T}, used to push reference gradients forward.
  std::array<double, 4> inverse_transpose() const;
};

struct BoundaryEdge {
  int edge = -1;      // global edge index
  int triangle = -1;  // the single owning triangle
  Point normal;       // unit outward normal
};

/// Uniform triangulation of [0,1]^2: each of the N x N cells is split along
/// its lower-left to upper-right diagonal. Immutable after construction.
class Mesh {
 public:
  static Mesh unit_square(int n_div);

  int n_div() const { return n_div_; }
  double h() const { return 1.0 / n_div_; }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  /// Sorted vertex pairs in lexicographic order; position is the edge index.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_triangles() const { return static_cast<int>(triangles_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  /// Global indices of local edges (v0,v1), (v1,v2), (v2,v0).
  const std::array<int, 3>& triangle_edges(int tri) const { return triangle_edges_.at(tri); }
  /// Triangles sharing the edge; the second entry is -1 on the boundary.
  const std::array<int, 2>& edge_triangles(int edge) const { return edge_triangles_.at(edge); }

  double signed_area(int tri) const;
  AffineMap affine_map(int tri) const;
  Point centroid(int tri) const;

  /// Debug dump: one `x y` line per vertex, then one `i j k` line per triangle.
  void write_text(std::ostream& os) const;

 private:
  Mesh() = default;

  int n_div_ = 0;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<std::array<int, 2>> edge_triangles_;
  std::vector<BoundaryEdge> boundary_edges_;
};

}  // namespace ehd
