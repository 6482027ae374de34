#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehd/assembly.hpp"
#include "ehd/dofmap.hpp"
#include "ehd/mesh.hpp"
#include "ehd/sparse.hpp"

namespace ehd {

/// One linear solve inside a time step.
struct SolveRecord {
  int step = 0;
  double time = 0.0;
  std::string field;
  double residual = 0.0;
};

using Diagnostics = std::vector<SolveRecord>;

/// `step=<k> t=<time> field=<name> residual=<r>`
std::string format_log_line(const SolveRecord& record);

/// Raised by advance() when a sub-step fails; names the sub-step.
class StepError : public std::runtime_error {
 public:
  StepError(const std::string& step_name, const std::string& cause)
      : std::runtime_error(step_name + ": " + cause), step_name_(step_name) {}
  const std::string& step_name() const { return step_name_; }

 private:
  std::string step_name_;
};

/// Taylor-Hood spaces shared by both schemes: P2 scalar, P2 vector, P1 pressure.
struct FlowSpaces {
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const DofMap> scalar;
  std::shared_ptr<const DofMap> vector;
  std::shared_ptr<const DofMap> pressure;

  static FlowSpaces on(std::shared_ptr<const Mesh> mesh);
};

/// Monolithic velocity-pressure solve with a mean-zero multiplier row.
///
/// Solves [A, -B^T, 0; B, 0, m; 0, m^T, 0] (u, p, lambda) = (f, 0, 0) with
/// m_j = (1, psi_j), after imposing velocity Dirichlet rows on A.
struct SaddlePointSolution {
  DiscreteField u;
  DiscreteField p;
  double residual = 0.0;
  double multiplier = 0.0;
};
SaddlePointSolution solve_saddle_point(const FlowSpaces& spaces, const SparseMatrix& velocity_block,
                                       const SparseMatrix& divergence,
                                       std::span<const double> pressure_mean_row,
                                       std::vector<double> rhs,
                                       const fem::DirichletData& velocity_bc);

/// Largest |(div u, q_i)| over the pressure basis.
double max_divergence_residual(const SparseMatrix& divergence, const DiscreteField& u);

/// Solves and records one linear system; throws SingularMatrixError through.
std::vector<double> solve_logged(const SparseMatrix& a, std::span<const double> b,
                                 const std::string& field, int step, double time,
                                 Diagnostics* diagnostics);

}  // namespace ehd
