#include "ehd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ehd {

Point AffineMap::apply(double xi, double eta) const {
  return {jacobian[0] * xi + jacobian[1] * eta + origin.x,
          jacobian[2] * xi + jacobian[3] * eta + origin.y};
}

double AffineMap::abs_det() const { return std::abs(det); }

std::array<double, 4> AffineMap::inverse_transpose() const {
  // inv(J) = [[d, -b], [-c, a]] / det, so inv(J)^T = [[d, -c], [-b, a]] / det
  const double inv = 1.0 / det;
  return {jacobian[3] * inv, -jacobian[2] * inv, -jacobian[1] * inv, jacobian[0] * inv};
}

Mesh Mesh::unit_square(int n_div) {
  if (n_div < 1) {
    throw std::invalid_argument("Mesh::unit_square: n_div must be >= 1, got " +
                                std::to_string(n_div));
  }
  Mesh mesh;
  mesh.n_div_ = n_div;
  const int stride = n_div + 1;
  const double h = 1.0 / n_div;

  mesh.vertices_.reserve(static_cast<std::size_t>(stride) * stride);
  for (int j = 0; j <= n_div; ++j) {
    for (int i = 0; i <= n_div; ++i) {
      // Exact endpoints so boundary tests can compare with 0 and 1.
      const double x = (i == n_div) ? 1.0 : i * h;
      const double y = (j == n_div) ? 1.0 : j * h;
      mesh.vertices_.push_back({x, y});
    }
  }

  mesh.triangles_.reserve(2 * static_cast<std::size_t>(n_div) * n_div);
  for (int j = 0; j < n_div; ++j) {
    for (int i = 0; i < n_div; ++i) {
      const int v00 = j * stride + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + stride;
      const int v11 = v01 + 1;
      mesh.triangles_.push_back({v00, v10, v11});
      mesh.triangles_.push_back({v00, v11, v01});
    }
  }

  std::vector<std::array<int, 2>> all_edges;
  all_edges.reserve(3 * mesh.triangles_.size());
  for (const auto& t : mesh.triangles_) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      all_edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(all_edges.begin(), all_edges.end());
  all_edges.erase(std::unique(all_edges.begin(), all_edges.end()), all_edges.end());
  mesh.edges_ = std::move(all_edges);

  auto edge_index = [&mesh](int a, int b) {
    const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
    const auto it = std::lower_bound(mesh.edges_.begin(), mesh.edges_.end(), key);
    return static_cast<int>(it - mesh.edges_.begin());
  };

  mesh.edge_triangles_.assign(mesh.edges_.size(), {-1, -1});
  mesh.triangle_edges_.resize(mesh.triangles_.size());
  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const auto& t = mesh.triangles_[tri];
    for (int k = 0; k < 3; ++k) {
      const int e = edge_index(t[k], t[(k + 1) % 3]);
      mesh.triangle_edges_[tri][k] = e;
      auto& owners = mesh.edge_triangles_[e];
      if (owners[0] < 0) {
        owners[0] = tri;
      } else {
        owners[1] = tri;
      }
    }
  }

  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const auto& t = mesh.triangles_[tri];
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.triangle_edges_[tri][k];
      if (mesh.edge_triangles_[e][1] >= 0) continue;
      // Counterclockwise traversal puts the outward normal on the right.
      const Point& a = mesh.vertices_[t[k]];
      const Point& b = mesh.vertices_[t[(k + 1) % 3]];
      const double dx = b.x - a.x;
      const double dy = b.y - a.y;
      const double len = std::hypot(dx, dy);
      mesh.boundary_edges_.push_back({e, tri, {dy / len, -dx / len}});
    }
  }
  std::sort(mesh.boundary_edges_.begin(), mesh.boundary_edges_.end(),
            [](const BoundaryEdge& l, const BoundaryEdge& r) { return l.edge < r.edge; });
  return mesh;
}

double Mesh::signed_area(int tri) const {
  const auto& t = triangles_.at(tri);
  const Point& a = vertices_[t[0]];
  const Point& b = vertices_[t[1]];
  const Point& c = vertices_[t[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

AffineMap Mesh::affine_map(int tri) const {
  const auto& t = triangles_.at(tri);
  const Point& a = vertices_[t[0]];
  const Point& b = vertices_[t[1]];
  const Point& c = vertices_[t[2]];
  AffineMap map;
  map.jacobian = {b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y};
  map.origin = a;
  map.det = map.jacobian[0] * map.jacobian[3] - map.jacobian[1] * map.jacobian[2];
  return map;
}

Point Mesh::centroid(int tri) const {
  const auto& t = triangles_.at(tri);
  Point c;
  for (int v : t) {
    c.x += vertices_[v].x / 3.0;
    c.y += vertices_[v].y / 3.0;
  }
  return c;
}

void Mesh::write_text(std::ostream& os) const {
  for (const auto& v : vertices_) os << v.x << ' ' << v.y << '\n';
  for (const auto& t : triangles_) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace ehd
