#include "ehd/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ehd {

std::string format_log_line(const SolveRecord& record) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "step=%d t=%.6g field=%s residual=%.3e", record.step,
                record.time, record.field.c_str(), record.residual);
  return buf;
}

FlowSpaces FlowSpaces::on(std::shared_ptr<const Mesh> mesh) {
  FlowSpaces s;
  s.mesh = mesh;
  s.scalar = std::make_shared<const DofMap>(mesh, SpaceKind::ScalarP2);
  s.vector = std::make_shared<const DofMap>(mesh, SpaceKind::VectorP2);
  s.pressure = std::make_shared<const DofMap>(mesh, SpaceKind::ScalarP1);
  return s;
}

std::vector<double> solve_logged(const SparseMatrix& a, std::span<const double> b,
                                 const std::string& field, int step, double time,
                                 Diagnostics* diagnostics) {
  LinearSolution sol = solve_direct(a, b);
  if (diagnostics) diagnostics->push_back({step, time, field, sol.residual_norm});
  return std::move(sol.x);
}

SaddlePointSolution solve_saddle_point(const FlowSpaces& spaces, const SparseMatrix& velocity_block,
                                       const SparseMatrix& divergence,
                                       std::span<const double> pressure_mean_row,
                                       std::vector<double> rhs,
                                       const fem::DirichletData& velocity_bc) {
  const int nu = spaces.vector->n_dofs();
  const int np = spaces.pressure->n_dofs();
  const int n = nu + np + 1;
  if (velocity_block.rows() != nu || divergence.rows() != np || divergence.cols() != nu ||
      static_cast<int>(pressure_mean_row.size()) != np || static_cast<int>(rhs.size()) != nu) {
    throw std::invalid_argument("solve_saddle_point: block shapes do not match the spaces");
  }

  std::vector<Triplet> t;
  t.reserve(velocity_block.nnz() + 2 * divergence.nnz() + 2 * np);
  velocity_block.append_to(t, 0, 0);
  for (int r = 0; r < np; ++r) {
    for (int k = divergence.row_ptr()[r]; k < divergence.row_ptr()[r + 1]; ++k) {
      const int c = divergence.col_idx()[k];
      const double v = divergence.values()[k];
      t.push_back({nu + r, c, v});   // (div u, q)
      t.push_back({c, nu + r, -v});  // -(p, div v)
    }
    t.push_back({nu + r, n - 1, pressure_mean_row[r]});
    t.push_back({n - 1, nu + r, pressure_mean_row[r]});
  }
  SparseMatrix system = SparseMatrix::from_triplets(n, n, t);
  rhs.resize(n, 0.0);
  fem::apply_dirichlet(system, rhs, velocity_bc.dofs, velocity_bc.values);

  const LinearSolution sol = solve_direct(system, rhs);
  SaddlePointSolution out;
  out.u = DiscreteField(spaces.vector, {sol.x.begin(), sol.x.begin() + nu});
  out.p = DiscreteField(spaces.pressure, {sol.x.begin() + nu, sol.x.begin() + nu + np});
  out.multiplier = sol.x[n - 1];
  out.residual = sol.residual_norm;
  return out;
}

double max_divergence_residual(const SparseMatrix& divergence, const DiscreteField& u) {
  const std::vector<double> r = divergence.multiply(u.values());
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace ehd
