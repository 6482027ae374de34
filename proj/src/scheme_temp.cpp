#include "ehd/scheme_temp.hpp"

#include <stdexcept>

#include "ehd/simd/kernels.hpp"

namespace ehd {

void TempParameters::validate() const {
  if (!(t_ratio > 0.0) || !(m > 0.0) || !(c > 0.0) || !(alpha > 0.0) || !(prandtl > 0.0) ||
      !(dt > 0.0) || !(t_final > 0.0)) {
    throw std::invalid_argument("TempParameters: T, M, C, alpha, Pr, dt and t_final must all be positive");
  }
  if (dt > t_final) throw std::invalid_argument("TempParameters: dt exceeds t_final");
}

TempScheme::TempScheme(std::shared_ptr<const Mesh> mesh, TempParameters params,
                       TempSources sources, TempBoundary boundary)
    : spaces_(FlowSpaces::on(std::move(mesh))),
      params_(params),
      sources_(std::move(sources)),
      boundary_(std::move(boundary)) {
  params_.validate();
  mass_ = fem::assemble_mass(*spaces_.scalar);
  stiffness_ = fem::assemble_stiffness(*spaces_.scalar);
  vector_mass_ = fem::assemble_mass(*spaces_.vector);
  vector_stiffness_ = fem::assemble_stiffness(*spaces_.vector);
  divergence_ = fem::assemble_divergence(*spaces_.vector, *spaces_.pressure);
  pressure_mean_row_ =
      fem::assemble_load(*spaces_.pressure, [](const fem::QuadPoint&) { return 1.0; });
}

std::vector<double> TempScheme::load(const SpaceTimeFunction& f, double t) const {
  if (!f) return std::vector<double>(spaces_.scalar->n_dofs(), 0.0);
  return fem::assemble_load(*spaces_.scalar,
                            [&](const fem::QuadPoint& qp) { return f(qp.x.x, qp.x.y, t); });
}

TempState TempScheme::startup(const TempSnapshot& initial, double t0) const {
  if (!initial.complete()) throw std::invalid_argument("TempScheme::startup: snapshot is incomplete");
  TempState state;
  state.time = t0;
  state.current.u = DiscreteField::interpolate(spaces_.vector, initial.u);
  state.current.p = DiscreteField::interpolate(spaces_.pressure, initial.p);
  const double mean = state.current.p.integral();
  for (double& v : state.current.p.data()) v -= mean;
  state.current.q = DiscreteField::interpolate(spaces_.scalar, initial.q);
  state.current.phi = DiscreteField::interpolate(spaces_.scalar, initial.phi);
  state.current.theta = DiscreteField::interpolate(spaces_.scalar, initial.theta);
  return state;
}

std::pair<DiscreteField, DiscreteField> TempScheme::step_flow(const TempState& state,
                                                              Diagnostics* diagnostics) const {
  const double dt = params_.dt;
  const double t_next = state.time + dt;
  const DofMap& v = *spaces_.vector;
  const TempFields& f = state.current;

  const SparseMatrix convection = fem::assemble_convection(v, f.u);
  SparseMatrix a = add(vector_mass_, 1.0 / dt, convection, 1.0);
  a = add(a, 1.0, vector_stiffness_, 1.0);

  // (f, v) - (T/M)^2 C (q^n grad phi^n, v)
  const double coulomb = params_.coulomb();
  const auto& fx = sources_.flow_x;
  const auto& fy = sources_.flow_y;
  std::vector<double> rhs =
      fem::assemble_vector_load(v, [&](const fem::QuadPoint& qp) -> std::array<double, 2> {
        const double q = f.q.value(qp.tri, qp.xi, qp.eta);
        const auto g = f.phi.gradient(qp.tri, qp.xi, qp.eta);
        return {(fx ? fx(qp.x.x, qp.x.y, t_next) : 0.0) - coulomb * q * g[0],
                (fy ? fy(qp.x.x, qp.x.y, t_next) : 0.0) - coulomb * q * g[1]};
      });
  const std::vector<double> mu = vector_mass_.multiply(f.u.values());
  simd::axpby(1.0 / dt, mu, 1.0, rhs, rhs);

  const fem::DirichletData bc =
      boundary_.u ? fem::boundary_trace(v, [&](double x, double y) { return boundary_.u(x, y, t_next); })
                  : fem::boundary_trace(v, [](double, double) { return std::array<double, 2>{0.0, 0.0}; });
  SaddlePointSolution sol =
      solve_saddle_point(spaces_, a, divergence_, pressure_mean_row_, std::move(rhs), bc);
  if (diagnostics) diagnostics->push_back({state.step + 1, t_next, "u,p", sol.residual});
  return {std::move(sol.u), std::move(sol.p)};
}

std::pair<DiscreteField, DiscreteField> TempScheme::step_charge_potential(
    const TempState& state, Diagnostics* diagnostics) const {
  const double dt = params_.dt;
  const double t_next = state.time + dt;
  const DofMap& s = *spaces_.scalar;
  const int n = s.n_dofs();
  const TempFields& f = state.current;

  // Unknowns (q, phi):
  //   (M/dt + alpha K) q + (T/M^2) K[q^n] phi = M q^n/dt + (u^n q^n, grad xi) + g
  //   M q - (1/C) K phi                       = gauss
  const SparseMatrix drift = fem::assemble_stiffness(s, f.q);
  std::vector<Triplet> t;
  t.reserve(2 * mass_.nnz() + stiffness_.nnz() + drift.nnz() + 2 * n);
  mass_.append_to(t, 0, 0, 1.0 / dt);
  stiffness_.append_to(t, 0, 0, params_.alpha);
  drift.append_to(t, 0, n, params_.migration());
  mass_.append_to(t, n, 0, 1.0);
  stiffness_.append_to(t, n, n, -1.0 / params_.c);
  SparseMatrix a = SparseMatrix::from_triplets(2 * n, 2 * n, t);

  std::vector<double> rhs(2 * n, 0.0);
  const std::vector<double> flux =
      fem::assemble_gradient_load(s, [&](const fem::QuadPoint& qp) -> std::array<double, 2> {
        const double q = f.q.value(qp.tri, qp.xi, qp.eta);
        return {f.u.value(qp.tri, qp.xi, qp.eta, 0) * q, f.u.value(qp.tri, qp.xi, qp.eta, 1) * q};
      });
  const std::vector<double> g = load(sources_.charge, t_next);
  const std::vector<double> mq = mass_.multiply(f.q.values());
  const std::vector<double> gauss = load(sources_.gauss, t_next);
  for (int i = 0; i < n; ++i) {
    rhs[i] = mq[i] / dt + flux[i] + g[i];
    rhs[n + i] = gauss[i];
  }

  auto constrain = [&](const std::optional<SpaceTimeFunction>& trace, int shift) {
    if (!trace) return;
    const auto bc =
        fem::boundary_trace(s, [&](double x, double y) { return (*trace)(x, y, t_next); }).offset(shift);
    fem::apply_dirichlet(a, rhs, bc.dofs, bc.values);
  };
  constrain(boundary_.q, 0);
  constrain(boundary_.phi, n);

  const std::vector<double> x =
      solve_logged(a, rhs, "q,phi", state.step + 1, t_next, diagnostics);
  return {DiscreteField(spaces_.scalar, {x.begin(), x.begin() + n}),
          DiscreteField(spaces_.scalar, {x.begin() + n, x.end()})};
}

DiscreteField TempScheme::step_temperature(const TempState& state, Diagnostics* diagnostics) const {
  const double dt = params_.dt;
  const double t_next = state.time + dt;
  const DofMap& s = *spaces_.scalar;
  const SparseMatrix convection = fem::assemble_convection(s, state.current.u);
  SparseMatrix a = add(mass_, 1.0 / dt, convection, 1.0);
  a = add(a, 1.0, stiffness_, 1.0 / params_.prandtl);
  std::vector<double> rhs = load(sources_.temperature, t_next);
  const std::vector<double> m_theta = mass_.multiply(state.current.theta.values());
  simd::axpby(1.0 / dt, m_theta, 1.0, rhs, rhs);
  if (boundary_.theta) {
    const auto bc = fem::boundary_trace(
        s, [&](double x, double y) { return (*boundary_.theta)(x, y, t_next); });
    fem::apply_dirichlet(a, rhs, bc.dofs, bc.values);
  }
  return DiscreteField(spaces_.scalar,
                       solve_logged(a, rhs, "theta", state.step + 1, t_next, diagnostics));
}

Diagnostics TempScheme::advance(TempState& state) const {
  Diagnostics diagnostics;
  auto guarded = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      throw StepError(name, e.what());
    }
  };
  // Every step reads only level-n data, so the order below is the printed one
  // but the three solves are independent.
  auto [u, p] = guarded("step_flow", [&] { return step_flow(state, &diagnostics); });
  auto [q, phi] = guarded("step_charge_potential",
                          [&] { return step_charge_potential(state, &diagnostics); });
  DiscreteField theta = guarded("step_temperature", [&] { return step_temperature(state, &diagnostics); });
  state.current = {std::move(u), std::move(p), std::move(q), std::move(phi), std::move(theta)};
  ++state.step;
  state.time += params_.dt;
  return diagnostics;
}

}  // namespace ehd
