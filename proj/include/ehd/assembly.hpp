#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "ehd/dofmap.hpp"
#include "ehd/sparse.hpp"

namespace ehd::fem {

/// A quadrature point during assembly. `weight` already includes |det J|.
struct QuadPoint {
  int tri = 0;
  double xi = 0.0;
  double eta = 0.0;
  Point x;
  double weight = 0.0;
};

using QuadIntegrand = std::function<double(const QuadPoint&)>;
using QuadVectorIntegrand = std::function<std::array<double, 2>(const QuadPoint&)>;

// All forms use the degree-5 rule. Vector spaces get the scalar form on each
// component (block diagonal in the interleaved numbering). Row = test, col = trial.

/// (phi_j, phi_i)
SparseMatrix assemble_mass(const DofMap& space);
/// (w phi_j, phi_i)
SparseMatrix assemble_mass(const DofMap& space, const DiscreteField& weight);

/// c (grad phi_j, grad phi_i)
SparseMatrix assemble_stiffness(const DofMap& space, double coefficient = 1.0);
/// (w grad phi_j, grad phi_i)
SparseMatrix assemble_stiffness(const DofMap& space, const DiscreteField& weight);

/// ((wind . grad) phi_j, phi_i)
SparseMatrix assemble_convection(const DofMap& target, const DiscreteField& wind);
/// (w (wind . grad) phi_j, phi_i)
SparseMatrix assemble_convection(const DofMap& target, const DiscreteField& wind,
                                 const DiscreteField& weight);

/// (w (div wind) phi_j, phi_i)
SparseMatrix assemble_wind_divergence_mass(const DofMap& target, const DiscreteField& wind,
                                           const DiscreteField& weight);

/// B[i][j] = (div v_j, q_i) for vector-P2 velocity and scalar-P1 pressure.
/// The pressure-gradient block of a saddle-point system is -B^T.
SparseMatrix assemble_divergence(const DofMap& velocity, const DofMap& pressure);

/// (div(wind phi_j), phi_i), optionally minus (1/2)(phi_j div wind, phi_i).
SparseMatrix assemble_conservative_transport(const DofMap& space, const DiscreteField& wind,
                                             bool skew_correction = false);

/// (f, phi_i) for a scalar space.
std::vector<double> assemble_load(const DofMap& space, const QuadIntegrand& f);
/// (F, v_i) for a vector space.
std::vector<double> assemble_vector_load(const DofMap& space, const QuadVectorIntegrand& f);
/// (F, grad phi_i) for a scalar space.
std::vector<double> assemble_gradient_load(const DofMap& space, const QuadVectorIntegrand& f);

/// Row replacement: each constrained row becomes e_i with rhs value.
/// Throws std::invalid_argument on a repeated dof with a different value.
void apply_dirichlet(SparseMatrix& a, std::span<double> rhs, std::span<const int> dofs,
                     std::span<const double> values);

/// Boundary dofs of `space` and the trace of f at their nodes.
struct DirichletData {
  std::vector<int> dofs;
  std::vector<double> values;

  /// Shifts dof indices, for blocks of a larger system.
  DirichletData offset(int shift) const;
};
DirichletData boundary_trace(const DofMap& space, const ScalarFunction& f);
DirichletData boundary_trace(const DofMap& space, const VectorFunction& f);
/// Trace of f restricted to inflow nodes: boundary nodes of a scalar space
/// lying on an edge where wind . n < 0 at that node. `wind` must be vector P2
/// on the same mesh.
DirichletData inflow_trace(const DofMap& space, const DiscreteField& wind, const ScalarFunction& f);

/// ||field - exact||_0 by the degree-5 rule.
double l2_error(const DiscreteField& field, const ScalarFunction& exact);
double l2_error(const DiscreteField& field, const VectorFunction& exact);

}  // namespace ehd::fem
