#include "ehd/assembly.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "ehd/quadrature.hpp"

namespace ehd::fem {

namespace {

constexpr int kMax = ReferenceElement::kMaxLocalDofs;
using Grad = std::array<double, 2>;

/// Shape values and reference gradients of one element at every rule point.
struct Tabulation {
  int n = 0;
  std::vector<std::array<double, kMax>> phi;
  std::vector<std::array<Grad, kMax>> dphi;

  Tabulation(const ReferenceElement& element, const QuadratureRule& rule)
      : n(element.n_local_dofs()), phi(rule.size()), dphi(rule.size()) {
    for (int q = 0; q < rule.size(); ++q) {
      element.values(rule.xi(q), rule.eta(q), phi[q]);
      element.gradients(rule.xi(q), rule.eta(q), dphi[q]);
    }
  }
};

struct CellGeometry {
  AffineMap map;
  std::array<double, 4> g{};  // J^{-T}

  void bind(const Mesh& mesh, int tri) {
    map = mesh.affine_map(tri);
    g = map.inverse_transpose();
  }
  Grad push(const Grad& ref) const {
    return {g[0] * ref[0] + g[1] * ref[1], g[2] * ref[0] + g[3] * ref[1]};
  }
};

/// Physical gradients of all basis functions at every rule point on one cell.
struct CellBasis {
  const Tabulation* tab = nullptr;
  std::vector<std::array<Grad, kMax>> grad;

  explicit CellBasis(const Tabulation& t) : tab(&t), grad(t.phi.size()) {}
  void bind(const CellGeometry& geo) {
    for (std::size_t q = 0; q < grad.size(); ++q) {
      for (int k = 0; k < tab->n; ++k) grad[q][k] = geo.push(tab->dphi[q][k]);
    }
  }
  double phi(int q, int k) const { return tab->phi[q][k]; }
};

/// Evaluates a discrete field at the rule points of the bound cell.
class CellField {
 public:
  CellField(const DiscreteField& field, const QuadratureRule& rule)
      : field_(field), tab_(field.space().element(), rule) {}

  void bind(int tri, const CellGeometry& geo) {
    const auto nodes = field_.space().cell_nodes(tri);
    const int nc = field_.space().components();
    const auto vals = field_.values();
    for (int k = 0; k < tab_.n; ++k) {
      for (int c = 0; c < nc; ++c) coef_[c][k] = vals[nc * nodes[k] + c];
    }
    geo_ = &geo;
  }

  double value(int q, int c = 0) const {
    double v = 0.0;
    for (int k = 0; k < tab_.n; ++k) v += coef_[c][k] * tab_.phi[q][k];
    return v;
  }
  Grad gradient(int q, int c = 0) const {
    Grad r{0.0, 0.0};
    for (int k = 0; k < tab_.n; ++k) {
      r[0] += coef_[c][k] * tab_.dphi[q][k][0];
      r[1] += coef_[c][k] * tab_.dphi[q][k][1];
    }
    return geo_->push(r);
  }
  double divergence(int q) const { return gradient(q, 0)[0] + gradient(q, 1)[1]; }

 private:
  const DiscreteField& field_;
  Tabulation tab_;
  std::array<std::array<double, kMax>, 2> coef_{};
  const CellGeometry* geo_ = nullptr;
};

void require_same_mesh(const DofMap& a, const DofMap& b, const char* what) {
  if (!a.same_mesh(b)) throw std::invalid_argument(std::string(what) + ": spaces live on different meshes");
}

void require_vector(const DiscreteField& f, const char* what) {
  if (!f.space().is_vector() || f.space().degree() != 2) {
    throw std::invalid_argument(std::string(what) + ": wind must be a vector-P2 field");
  }
}

void require_scalar(const DiscreteField& f, const char* what) {
  if (f.space().is_vector()) throw std::invalid_argument(std::string(what) + ": weight must be scalar");
}

using LocalMatrix = std::array<std::array<double, kMax>, kMax>;

/// Generic cell loop for a form on a single space (test = trial). `local_fn`
/// fills the scalar local matrix; vector spaces are expanded block-diagonally.
template <class LocalFn>
SparseMatrix assemble_on(const DofMap& space, LocalFn&& local_fn) {
  const Mesh& mesh = space.mesh();
  const int nl = space.n_local_nodes();
  const int nc = space.components();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * nl * nl * nc);
  LocalMatrix local{};
  CellGeometry geo;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    geo.bind(mesh, t);
    for (auto& row : local) row.fill(0.0);
    local_fn(t, geo, local);
    const auto nodes = space.cell_nodes(t);
    for (int i = 0; i < nl; ++i) {
      for (int j = 0; j < nl; ++j) {
        for (int c = 0; c < nc; ++c) {
          triplets.push_back({nc * nodes[i] + c, nc * nodes[j] + c, local[i][j]});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(space.n_dofs(), space.n_dofs(), triplets);
}

const QuadratureRule& rule5() {
  static const QuadratureRule rule = quadrature(kDefaultQuadratureDegree);
  return rule;
}

}  // namespace

SparseMatrix assemble_mass(const DofMap& space) {
  const auto& rule = rule5();
  const Tabulation tab(space.element(), rule);
  return assemble_on(space, [&](int, const CellGeometry& geo, LocalMatrix& local) {
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * det;
      for (int i = 0; i < tab.n; ++i) {
        for (int j = 0; j < tab.n; ++j) local[i][j] += w * tab.phi[q][i] * tab.phi[q][j];
      }
    }
  });
}

SparseMatrix assemble_mass(const DofMap& space, const DiscreteField& weight) {
  require_scalar(weight, "assemble_mass");
  require_same_mesh(space, weight.space(), "assemble_mass");
  const auto& rule = rule5();
  const Tabulation tab(space.element(), rule);
  CellField rho(weight, rule);
  return assemble_on(space, [&](int t, const CellGeometry& geo, LocalMatrix& local) {
    rho.bind(t, geo);
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * det * rho.value(q);
      for (int i = 0; i < tab.n; ++i) {
        for (int j = 0; j < tab.n; ++j) local[i][j] += w * tab.phi[q][i] * tab.phi[q][j];
      }
    }
  });
}

SparseMatrix assemble_stiffness(const DofMap& space, double coefficient) {
  const auto& rule = rule5();
  const Tabulation tab(space.element(), rule);
  CellBasis basis(tab);
  return assemble_on(space, [&](int, const CellGeometry& geo, LocalMatrix& local) {
    basis.bind(geo);
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = coefficient * rule.weights[q] * det;
      const auto& g = basis.grad[q];
      for (int i = 0; i < tab.n; ++i) {
        for (int j = 0; j < tab.n; ++j) {
          local[i][j] += w * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
        }
      }
    }
  });
}

SparseMatrix assemble_stiffness(const DofMap& space, const DiscreteField& weight) {
  require_scalar(weight, "assemble_stiffness");
  require_same_mesh(space, weight.space(), "assemble_stiffness");
  const auto& rule = rule5();
  const Tabulation tab(space.element(), rule);
  CellBasis basis(tab);
  CellField k(weight, rule);
  return assemble_on(space, [&](int t, const CellGeometry& geo, LocalMatrix& local) {
    basis.bind(geo);
    k.bind(t, geo);
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * det * k.value(q);
      const auto& g = basis.grad[q];
      for (int i = 0; i < tab.n; ++i) {
        for (int j = 0; j < tab.n; ++j) {
          local[i][j] += w * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
        }
      }
    }
  });
}

namespace {

SparseMatrix convection_impl(const DofMap& target, const DiscreteField& wind,
                             const DiscreteField* weight) {
  require_vector(wind, "assemble_convection");
  require_same_mesh(target, wind.space(), "assemble_convection");
  if (weight) {
    require_scalar(*weight, "assemble_convection");
    require_same_mesh(target, weight->space(), "assemble_convection");
  }
  const auto& rule = rule5();
  const Tabulation tab(target.element(), rule);
  CellBasis basis(tab);
  CellField b(wind, rule);
  std::optional<CellField> rho;
  if (weight) rho.emplace(*weight, rule);
  return assemble_on(target, [&](int t, const CellGeometry& geo, LocalMatrix& local) {
    basis.bind(geo);
    b.bind(t, geo);
    if (rho) rho->bind(t, geo);
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      double w = rule.weights[q] * det;
      if (rho) w *= rho->value(q);
      const double bx = b.value(q, 0);
      const double by = b.value(q, 1);
      const auto& g = basis.grad[q];
      for (int j = 0; j < tab.n; ++j) {
        const double adv = w * (bx * g[j][0] + by * g[j][1]);
        for (int i = 0; i < tab.n; ++i) local[i][j] += adv * tab.phi[q][i];
      }
    }
  });
}

}  // namespace

SparseMatrix assemble_convection(const DofMap& target, const DiscreteField& wind) {
  return convection_impl(target, wind, nullptr);
}

SparseMatrix assemble_convection(const DofMap& target, const DiscreteField& wind,
                                 const DiscreteField& weight) {
  return convection_impl(target, wind, &weight);
}

SparseMatrix assemble_wind_divergence_mass(const DofMap& target, const DiscreteField& wind,
                                           const DiscreteField& weight) {
  require_vector(wind, "assemble_wind_divergence_mass");
  require_scalar(weight, "assemble_wind_divergence_mass");
  require_same_mesh(target, wind.space(), "assemble_wind_divergence_mass");
  require_same_mesh(target, weight.space(), "assemble_wind_divergence_mass");
  const auto& rule = rule5();
  const Tabulation tab(target.element(), rule);
  CellField b(wind, rule);
  CellField rho(weight, rule);
  return assemble_on(target, [&](int t, const CellGeometry& geo, LocalMatrix& local) {
    b.bind(t, geo);
    rho.bind(t, geo);
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * det * rho.value(q) * b.divergence(q);
      for (int i = 0; i < tab.n; ++i) {
        for (int j = 0; j < tab.n; ++j) local[i][j] += w * tab.phi[q][i] * tab.phi[q][j];
      }
    }
  });
}

SparseMatrix assemble_divergence(const DofMap& velocity, const DofMap& pressure) {
  if (!velocity.is_vector() || velocity.degree() != 2 || pressure.kind() != SpaceKind::ScalarP1) {
    throw std::invalid_argument("assemble_divergence: expects vector-P2 velocity and P1 pressure");
  }
  require_same_mesh(velocity, pressure, "assemble_divergence");
  const auto& rule = rule5();
  const Tabulation vtab(velocity.element(), rule);
  const Tabulation ptab(pressure.element(), rule);
  CellBasis vbasis(vtab);
  const Mesh& mesh = velocity.mesh();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * 3 * 12);
  CellGeometry geo;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    geo.bind(mesh, t);
    vbasis.bind(geo);
    std::array<std::array<double, 2 * kMax>, 3> local{};
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * det;
      for (int i = 0; i < 3; ++i) {
        const double qi = w * ptab.phi[q][i];
        for (int j = 0; j < vtab.n; ++j) {
          local[i][2 * j] += qi * vbasis.grad[q][j][0];
          local[i][2 * j + 1] += qi * vbasis.grad[q][j][1];
        }
      }
    }
    const auto pn = pressure.cell_nodes(t);
    const auto vn = velocity.cell_nodes(t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < vtab.n; ++j) {
        for (int c = 0; c < 2; ++c) triplets.push_back({pn[i], 2 * vn[j] + c, local[i][2 * j + c]});
      }
    }
  }
  return SparseMatrix::from_triplets(pressure.n_dofs(), velocity.n_dofs(), triplets);
}

SparseMatrix assemble_conservative_transport(const DofMap& space, const DiscreteField& wind,
                                             bool skew_correction) {
  require_vector(wind, "assemble_conservative_transport");
  require_same_mesh(space, wind.space(), "assemble_conservative_transport");
  if (space.is_vector()) {
    throw std::invalid_argument("assemble_conservative_transport: target must be scalar");
  }
  const auto& rule = rule5();
  const Tabulation tab(space.element(), rule);
  CellBasis basis(tab);
  CellField b(wind, rule);
  const double div_factor = skew_correction ? 0.5 : 1.0;
  return assemble_on(space, [&](int t, const CellGeometry& geo, LocalMatrix& local) {
    basis.bind(geo);
    b.bind(t, geo);
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * det;
      const double bx = b.value(q, 0);
      const double by = b.value(q, 1);
      const double div = div_factor * b.divergence(q);
      const auto& g = basis.grad[q];
      for (int j = 0; j < tab.n; ++j) {
        const double flux = w * (bx * g[j][0] + by * g[j][1] + div * tab.phi[q][j]);
        for (int i = 0; i < tab.n; ++i) local[i][j] += flux * tab.phi[q][i];
      }
    }
  });
}

namespace {

template <class PointFn>
void for_each_point(const Mesh& mesh, PointFn&& fn) {
  const auto& rule = rule5();
  CellGeometry geo;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    geo.bind(mesh, t);
    const double det = geo.map.abs_det();
    for (int q = 0; q < rule.size(); ++q) {
      const QuadPoint qp{t, rule.xi(q), rule.eta(q), geo.map.apply(rule.xi(q), rule.eta(q)),
                         rule.weights[q] * det};
      fn(qp, q, geo);
    }
  }
}

}  // namespace

std::vector<double> assemble_load(const DofMap& space, const QuadIntegrand& f) {
  if (space.is_vector()) throw std::invalid_argument("assemble_load: scalar space expected");
  const Tabulation tab(space.element(), rule5());
  std::vector<double> b(space.n_dofs(), 0.0);
  for_each_point(space.mesh(), [&](const QuadPoint& qp, int q, const CellGeometry&) {
    const double v = qp.weight * f(qp);
    const auto nodes = space.cell_nodes(qp.tri);
    for (int i = 0; i < tab.n; ++i) b[nodes[i]] += v * tab.phi[q][i];
  });
  return b;
}

std::vector<double> assemble_vector_load(const DofMap& space, const QuadVectorIntegrand& f) {
  if (!space.is_vector()) throw std::invalid_argument("assemble_vector_load: vector space expected");
  const Tabulation tab(space.element(), rule5());
  std::vector<double> b(space.n_dofs(), 0.0);
  for_each_point(space.mesh(), [&](const QuadPoint& qp, int q, const CellGeometry&) {
    const auto v = f(qp);
    const auto nodes = space.cell_nodes(qp.tri);
    for (int i = 0; i < tab.n; ++i) {
      b[2 * nodes[i]] += qp.weight * v[0] * tab.phi[q][i];
      b[2 * nodes[i] + 1] += qp.weight * v[1] * tab.phi[q][i];
    }
  });
  return b;
}

std::vector<double> assemble_gradient_load(const DofMap& space, const QuadVectorIntegrand& f) {
  if (space.is_vector()) throw std::invalid_argument("assemble_gradient_load: scalar space expected");
  const Tabulation tab(space.element(), rule5());
  std::vector<double> b(space.n_dofs(), 0.0);
  for_each_point(space.mesh(), [&](const QuadPoint& qp, int q, const CellGeometry& geo) {
    const auto v = f(qp);
    const auto nodes = space.cell_nodes(qp.tri);
    for (int i = 0; i < tab.n; ++i) {
      const Grad g = geo.push(tab.dphi[q][i]);
      b[nodes[i]] += qp.weight * (v[0] * g[0] + v[1] * g[1]);
    }
  });
  return b;
}

void apply_dirichlet(SparseMatrix& a, std::span<double> rhs, std::span<const int> dofs,
                     std::span<const double> values) {
  if (dofs.size() != values.size()) {
    throw std::invalid_argument("apply_dirichlet: dofs and values differ in length");
  }
  std::map<int, double> seen;
  for (std::size_t k = 0; k < dofs.size(); ++k) {
    const int d = dofs[k];
    if (d < 0 || d >= a.rows() || d >= static_cast<int>(rhs.size())) {
      throw std::out_of_range("apply_dirichlet: dof " + std::to_string(d) + " out of range");
    }
    const auto [it, inserted] = seen.emplace(d, values[k]);
    if (!inserted && it->second != values[k]) {
      throw std::invalid_argument("apply_dirichlet: dof " + std::to_string(d) +
                                  " constrained to conflicting values");
    }
  }
  a.replace_rows_with_identity(dofs);
  for (std::size_t k = 0; k < dofs.size(); ++k) rhs[dofs[k]] = values[k];
}

DirichletData DirichletData::offset(int shift) const {
  DirichletData out = *this;
  for (int& d : out.dofs) d += shift;
  return out;
}

DirichletData boundary_trace(const DofMap& space, const ScalarFunction& f) {
  if (space.is_vector()) throw std::invalid_argument("boundary_trace: scalar space expected");
  DirichletData data;
  data.dofs = space.boundary_dofs();
  data.values.reserve(data.dofs.size());
  for (int d : data.dofs) {
    const Point& p = space.node(d);
    data.values.push_back(f(p.x, p.y));
  }
  return data;
}

DirichletData boundary_trace(const DofMap& space, const VectorFunction& f) {
  if (!space.is_vector()) throw std::invalid_argument("boundary_trace: vector space expected");
  DirichletData data;
  data.dofs = space.boundary_dofs();
  data.values.reserve(data.dofs.size());
  for (int d : data.dofs) {
    const Point& p = space.node(d / 2);
    data.values.push_back(f(p.x, p.y)[d % 2]);
  }
  return data;
}

DirichletData inflow_trace(const DofMap& space, const DiscreteField& wind, const ScalarFunction& f) {
  if (space.is_vector()) throw std::invalid_argument("inflow_trace: scalar space expected");
  if (!wind.space().is_vector() || !wind.space().same_mesh(space)) {
    throw std::invalid_argument("inflow_trace: wind must be vector P2 on the same mesh");
  }
  const Mesh& mesh = space.mesh();
  const int nv = mesh.n_vertices();
  const auto w = wind.values();
  std::vector<int> nodes;
  for (const BoundaryEdge& be : mesh.boundary_edges()) {
    const auto& e = mesh.edges()[be.edge];
    std::array<int, 3> on_edge{e[0], e[1], nv + be.edge};
    const int count = space.degree() == 2 ? 3 : 2;
    for (int k = 0; k < count; ++k) {
      const int n = on_edge[k];  // vertex and midpoint indices agree between P1/P2 and vector P2
      if (w[2 * n] * be.normal.x + w[2 * n + 1] * be.normal.y < 0.0) nodes.push_back(n);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  DirichletData data;
  data.dofs = nodes;
  for (int n : nodes) data.values.push_back(f(space.node(n).x, space.node(n).y));
  return data;
}

double l2_error(const DiscreteField& field, const ScalarFunction& exact) {
  if (field.space().is_vector()) throw std::invalid_argument("l2_error: scalar field expected");
  CellField uh(field, rule5());
  double sum = 0.0;
  for_each_point(field.space().mesh(), [&](const QuadPoint& qp, int q, const CellGeometry& geo) {
    if (q == 0) uh.bind(qp.tri, geo);
    const double e = uh.value(q) - exact(qp.x.x, qp.x.y);
    sum += qp.weight * e * e;
  });
  return std::sqrt(sum);
}

double l2_error(const DiscreteField& field, const VectorFunction& exact) {
  if (!field.space().is_vector()) throw std::invalid_argument("l2_error: vector field expected");
  CellField uh(field, rule5());
  double sum = 0.0;
  for_each_point(field.space().mesh(), [&](const QuadPoint& qp, int q, const CellGeometry& geo) {
    if (q == 0) uh.bind(qp.tri, geo);
    const auto u = exact(qp.x.x, qp.x.y);
    const double e0 = uh.value(q, 0) - u[0];
    const double e1 = uh.value(q, 1) - u[1];
    sum += qp.weight * (e0 * e0 + e1 * e1);
  });
  return std::sqrt(sum);
}

}  // namespace ehd::fem
