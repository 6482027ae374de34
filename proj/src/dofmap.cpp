#include "ehd/dofmap.hpp"

#include <stdexcept>
#include <string>

#include "ehd/quadrature.hpp"

namespace ehd {

namespace {

bool on_boundary(const Point& p) {
  return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
}

}  // namespace

DofMap::DofMap(std::shared_ptr<const Mesh> mesh, SpaceKind kind)
    : mesh_(std::move(mesh)), kind_(kind), element_(kind == SpaceKind::ScalarP1 ? 1 : 2) {
  if (!mesh_) throw std::invalid_argument("DofMap: null mesh");
  const Mesh& m = *mesh_;
  const int nv = m.n_vertices();

  nodes_ = m.vertices();
  boundary_.assign(nv, 0);
  for (int v = 0; v < nv; ++v) boundary_[v] = on_boundary(nodes_[v]) ? 1 : 0;

  if (element_.degree() == 2) {
    nodes_.reserve(nv + m.n_edges());
    boundary_.reserve(nv + m.n_edges());
    for (int e = 0; e < m.n_edges(); ++e) {
      const auto& [a, b] = m.edges()[e];
      const Point& pa = m.vertices()[a];
      const Point& pb = m.vertices()[b];
      nodes_.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
      boundary_.push_back(m.edge_triangles(e)[1] < 0 ? 1 : 0);
    }
  }

  const int nl = element_.n_local_dofs();
  cell_nodes_.resize(static_cast<std::size_t>(m.n_triangles()) * nl);
  for (int t = 0; t < m.n_triangles(); ++t) {
    int* cell = &cell_nodes_[static_cast<std::size_t>(t) * nl];
    const auto& tri = m.triangles()[t];
    cell[0] = tri[0];
    cell[1] = tri[1];
    cell[2] = tri[2];
    if (nl == 6) {
      const auto& te = m.triangle_edges(t);
      cell[3] = nv + te[0];
      cell[4] = nv + te[1];
      cell[5] = nv + te[2];
    }
  }
}

std::span<const int> DofMap::cell_nodes(int tri) const {
  const int nl = element_.n_local_dofs();
  return {cell_nodes_.data() + static_cast<std::size_t>(tri) * nl, static_cast<std::size_t>(nl)};
}

std::vector<int> DofMap::boundary_dofs() const {
  std::vector<int> dofs;
  const int nc = components();
  for (int n = 0; n < n_nodes(); ++n) {
    if (!boundary_[n]) continue;
    for (int c = 0; c < nc; ++c) dofs.push_back(nc * n + c);
  }
  return dofs;
}

DiscreteField::DiscreteField(std::shared_ptr<const DofMap> space)
    : space_(std::move(space)), values_(space_->n_dofs(), 0.0) {}

DiscreteField::DiscreteField(std::shared_ptr<const DofMap> space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != space_->n_dofs()) {
    throw std::invalid_argument("DiscreteField: expected " + std::to_string(space_->n_dofs()) +
                                " coefficients, got " + std::to_string(values_.size()));
  }
}

DiscreteField DiscreteField::interpolate(std::shared_ptr<const DofMap> space,
                                         const ScalarFunction& f) {
  if (space->is_vector()) throw std::invalid_argument("interpolate: scalar function on vector space");
  DiscreteField field(space);
  for (int n = 0; n < space->n_nodes(); ++n) {
    const Point& p = space->node(n);
    field.values_[n] = f(p.x, p.y);
  }
  return field;
}

DiscreteField DiscreteField::interpolate(std::shared_ptr<const DofMap> space,
                                         const VectorFunction& f) {
  if (!space->is_vector()) throw std::invalid_argument("interpolate: vector function on scalar space");
  DiscreteField field(space);
  for (int n = 0; n < space->n_nodes(); ++n) {
    const Point& p = space->node(n);
    const auto v = f(p.x, p.y);
    field.values_[2 * n] = v[0];
    field.values_[2 * n + 1] = v[1];
  }
  return field;
}

double DiscreteField::value(int tri, double xi, double eta, int c) const {
  std::array<double, ReferenceElement::kMaxLocalDofs> phi{};
  space_->element().values(xi, eta, phi);
  const auto nodes = space_->cell_nodes(tri);
  const int nc = space_->components();
  double v = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) v += values_[nc * nodes[k] + c] * phi[k];
  return v;
}

std::array<double, 2> DiscreteField::gradient(int tri, double xi, double eta, int c) const {
  std::array<std::array<double, 2>, ReferenceElement::kMaxLocalDofs> dphi{};
  space_->element().gradients(xi, eta, dphi);
  const auto nodes = space_->cell_nodes(tri);
  const int nc = space_->components();
  double gx = 0.0;
  double gy = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double a = values_[nc * nodes[k] + c];
    gx += a * dphi[k][0];
    gy += a * dphi[k][1];
  }
  const auto g = space_->mesh().affine_map(tri).inverse_transpose();
  return {g[0] * gx + g[1] * gy, g[2] * gx + g[3] * gy};
}

double DiscreteField::divergence(int tri, double xi, double eta) const {
  if (!space_->is_vector()) throw std::logic_error("divergence of a scalar field");
  return gradient(tri, xi, eta, 0)[0] + gradient(tri, xi, eta, 1)[1];
}

double DiscreteField::integral() const {
  if (space_->is_vector()) throw std::logic_error("integral of a vector field");
  const auto rule = quadrature(kDefaultQuadratureDegree);
  const Mesh& mesh = space_->mesh();
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double det = mesh.affine_map(t).abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      sum += rule.weights[q] * det * value(t, rule.xi(q), rule.eta(q));
    }
  }
  return sum;
}

}  // namespace ehd
