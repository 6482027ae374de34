#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ehd/element.hpp"
#include "ehd/mesh.hpp"

namespace ehd {

enum class SpaceKind { ScalarP1, ScalarP2, VectorP2 };

/// Global numbering for one finite element space on a mesh.
///
/// Scalar P1 nodes are the mesh vertices. Scalar P2 nodes are the vertices
/// followed by the edge midpoints in global edge order. Vector P2 dofs are
/// interleaved: dof 2*node + c is component c at that node.
class DofMap {
 public:
  DofMap(std::shared_ptr<const Mesh> mesh, SpaceKind kind);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  SpaceKind kind() const { return kind_; }
  int degree() const { return kind_ == SpaceKind::ScalarP1 ? 1 : 2; }
  int components() const { return kind_ == SpaceKind::VectorP2 ? 2 : 1; }
  bool is_vector() const { return kind_ == SpaceKind::VectorP2; }
  const ReferenceElement& element() const { return element_; }

  int n_nodes() const { return static_cast<int>(nodes_.size()); }
  int n_dofs() const { return n_nodes() * components(); }
  int n_local_nodes() const { return element_.n_local_dofs(); }

  /// Global node indices of a triangle, in reference-element order.
  std::span<const int> cell_nodes(int tri) const;
  const Point& node(int n) const { return nodes_[n]; }
  bool is_boundary_node(int n) const { return boundary_[n] != 0; }
  /// Boundary dofs in increasing order (both components for vector spaces).
  std::vector<int> boundary_dofs() const;

  bool same_mesh(const DofMap& other) const { return mesh_ == other.mesh_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  SpaceKind kind_;
  ReferenceElement element_;
  std::vector<int> cell_nodes_;
  std::vector<Point> nodes_;
  std::vector<char> boundary_;
};

using ScalarFunction = std::function<double(double x, double y)>;
using VectorFunction = std::function<std::array<double, 2>(double x, double y)>;
using SpaceTimeFunction = std::function<double(double x, double y, double t)>;
using VectorSpaceTimeFunction = std::function<std::array<double, 2>(double x, double y, double t)>;

/// Coefficient vector over a DofMap.
class DiscreteField {
 public:
  DiscreteField() = default;
  explicit DiscreteField(std::shared_ptr<const DofMap> space);
  DiscreteField(std::shared_ptr<const DofMap> space, std::vector<double> values);

  static DiscreteField interpolate(std::shared_ptr<const DofMap> space, const ScalarFunction& f);
  static DiscreteField interpolate(std::shared_ptr<const DofMap> space, const VectorFunction& f);

  const DofMap& space() const { return *space_; }
  const std::shared_ptr<const DofMap>& space_ptr() const { return space_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::vector<double>& data() { return values_; }
  const std::vector<double>& data() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  /// Component c at the reference point (xi, eta) of triangle tri.
  double value(int tri, double xi, double eta, int c = 0) const;
  /// Physical gradient of component c.
  std::array<double, 2> gradient(int tri, double xi, double eta, int c = 0) const;
  double divergence(int tri, double xi, double eta) const;

  /// Integral over the domain (scalar fields only).
  double integral() const;

 private:
  std::shared_ptr<const DofMap> space_;
  std::vector<double> values_;
};

}  // namespace ehd
