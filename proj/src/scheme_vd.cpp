#include "ehd/scheme_vd.hpp"

#include <stdexcept>
#include <string>

#include "ehd/simd/kernels.hpp"

namespace ehd {

void VdParameters::validate() const {
  if (!(nu > 0.0) || !(peclet > 0.0) || !(j0 > 0.0) || !(dt > 0.0) || !(t_final > 0.0)) {
    throw std::invalid_argument("VdParameters: nu, Pe, J0, dt and t_final must all be positive");
  }
  if (dt > t_final) throw std::invalid_argument("VdParameters: dt exceeds t_final");
}

VdScheme::VdScheme(std::shared_ptr<const Mesh> mesh, VdParameters params, VdSources sources,
                   VdBoundary boundary)
    : spaces_(FlowSpaces::on(std::move(mesh))),
      params_(params),
      sources_(std::move(sources)),
      boundary_(std::move(boundary)) {
  params_.validate();
  mass_ = fem::assemble_mass(*spaces_.scalar);
  stiffness_ = fem::assemble_stiffness(*spaces_.scalar);
  vector_stiffness_ = fem::assemble_stiffness(*spaces_.vector, params_.nu);
  divergence_ = fem::assemble_divergence(*spaces_.vector, *spaces_.pressure);
  pressure_mean_row_ =
      fem::assemble_load(*spaces_.pressure, [](const fem::QuadPoint&) { return 1.0; });
}

std::vector<double> VdScheme::load(const DofMap& space, const SpaceTimeFunction& f,
                                   double t) const {
  if (!f) return std::vector<double>(space.n_dofs(), 0.0);
  return fem::assemble_load(space, [&](const fem::QuadPoint& qp) { return f(qp.x.x, qp.x.y, t); });
}

namespace {

DiscreteField interpolate_zero_mean(const std::shared_ptr<const DofMap>& space,
                                    const ScalarFunction& f) {
  DiscreteField p = DiscreteField::interpolate(space, f);
  const double mean = p.integral();  // |domain| = 1
  for (double& v : p.data()) v -= mean;
  return p;
}

VdFields interpolate_snapshot(const FlowSpaces& s, const VdSnapshot& snap) {
  return {DiscreteField::interpolate(s.scalar, snap.rho), DiscreteField::interpolate(s.vector, snap.u),
          interpolate_zero_mean(s.pressure, snap.p), DiscreteField::interpolate(s.scalar, snap.rho_e),
          DiscreteField::interpolate(s.scalar, snap.phi)};
}

fem::DirichletData trace_at(const DofMap& space, const SpaceTimeFunction& f, double t) {
  return fem::boundary_trace(space, [&](double x, double y) { return f(x, y, t); });
}

}  // namespace

VdState VdScheme::startup(const VdSnapshot& at_t0, const VdSnapshot& at_t1, double t0) const {
  if (!at_t0.complete()) throw std::invalid_argument("VdScheme::startup: snapshot at t0 is incomplete");
  if (!at_t1.complete()) {
    throw std::invalid_argument("VdScheme::startup: snapshot at t0 + dt is incomplete");
  }
  VdState state;
  state.previous = interpolate_snapshot(spaces_, at_t0);
  state.current = interpolate_snapshot(spaces_, at_t1);
  state.step = 1;
  state.time = t0 + params_.dt;
  return state;
}

VdState VdScheme::bootstrap(const VdSnapshot& initial, double t0, Diagnostics* diagnostics) const {
  if (!initial.complete()) throw std::invalid_argument("VdScheme::bootstrap: snapshot is incomplete");
  VdState state;
  state.current = interpolate_snapshot(spaces_, initial);
  state.previous = state.current;
  state.time = t0;
  Diagnostics local;
  VdFields next = provisional_step(state, local);
  if (diagnostics) diagnostics->insert(diagnostics->end(), local.begin(), local.end());
  state.previous = std::move(state.current);
  state.current = std::move(next);
  state.step = 1;
  state.time = t0 + params_.dt;
  return state;
}

DiscreteField VdScheme::extrapolate(const DiscreteField& current, const DiscreteField& previous) {
  DiscreteField out(current.space_ptr());
  simd::axpby(2.0, current.values(), -1.0, previous.values(), out.values());
  return out;
}

DiscreteField VdScheme::step_density(const VdState& state, const DiscreteField& wind,
                                     Diagnostics* diagnostics) const {
  const double dt = params_.dt;
  const double t_next = state.time + dt;
  const SparseMatrix transport =
      fem::assemble_conservative_transport(*spaces_.scalar, wind, /*skew_correction=*/true);
  SparseMatrix a = add(mass_, 1.0 / dt, transport, 1.0);
  std::vector<double> rhs = load(*spaces_.scalar, sources_.density, t_next);
  const std::vector<double> m_rho = mass_.multiply(state.current.rho.values());
  simd::axpby(1.0 / dt, m_rho, 1.0, rhs, rhs);
  if (boundary_.rho_inflow) {
    const auto& g = *boundary_.rho_inflow;
    const auto bc = fem::inflow_trace(*spaces_.scalar, wind,
                                      [&](double x, double y) { return g(x, y, t_next); });
    fem::apply_dirichlet(a, rhs, bc.dofs, bc.values);
  }
  return DiscreteField(spaces_.scalar,
                       solve_logged(a, rhs, "rho", state.step + 1, t_next, diagnostics));
}

std::pair<DiscreteField, DiscreteField> VdScheme::step_momentum(const VdState& state,
                                                                const DiscreteField& rho_tilde,
                                                                const DiscreteField& rho_star,
                                                                const DiscreteField& wind,
                                                                Diagnostics* diagnostics) const {
  const double dt = params_.dt;
  const double t_next = state.time + dt;
  const DofMap& v = *spaces_.vector;

  const SparseMatrix inertia = fem::assemble_mass(v, rho_star);
  const SparseMatrix convection = fem::assemble_convection(v, wind, rho_tilde);
  // Quarter-weighted divergence form of the convective trilinear term; it
  // vanishes for solenoidal winds, so consistency with the momentum equation is kept.
  const SparseMatrix div_correction = fem::assemble_wind_divergence_mass(v, wind, rho_tilde);
  SparseMatrix a = add(inertia, 1.0 / dt, convection, 1.0);
  a = add(a, 1.0, div_correction, 0.25);
  a = add(a, 1.0, vector_stiffness_, 1.0);

  std::vector<double> rhs(v.n_dofs(), 0.0);
  if (sources_.momentum_x || sources_.momentum_y) {
    const auto fx = source_or_zero(sources_.momentum_x);
    const auto fy = source_or_zero(sources_.momentum_y);
    rhs = fem::assemble_vector_load(v, [&](const fem::QuadPoint& qp) -> std::array<double, 2> {
      return {fx(qp.x.x, qp.x.y, t_next), fy(qp.x.x, qp.x.y, t_next)};
    });
  }
  const std::vector<double> mu = inertia.multiply(state.current.u.values());
  simd::axpby(1.0 / dt, mu, 1.0, rhs, rhs);

  const fem::DirichletData bc =
      boundary_.u ? fem::boundary_trace(v, [&](double x, double y) { return boundary_.u(x, y, t_next); })
                  : fem::boundary_trace(v, [](double, double) { return std::array<double, 2>{0.0, 0.0}; });

  SaddlePointSolution sol =
      solve_saddle_point(spaces_, a, divergence_, pressure_mean_row_, std::move(rhs), bc);
  if (diagnostics) diagnostics->push_back({state.step + 1, t_next, "u,p", sol.residual});
  return {std::move(sol.u), std::move(sol.p)};
}

DiscreteField VdScheme::step_charge(const VdState& state, const DiscreteField& wind,
                                    Diagnostics* diagnostics) const {
  const double dt = params_.dt;
  const double t_next = state.time + dt;
  const SparseMatrix transport = fem::assemble_conservative_transport(*spaces_.scalar, wind);
  SparseMatrix a = add(mass_, 1.0 / dt + params_.j0, transport, 1.0);
  a = add(a, 1.0, stiffness_, 1.0 / params_.peclet);
  std::vector<double> rhs = load(*spaces_.scalar, sources_.charge, t_next);
  const std::vector<double> m_q = mass_.multiply(state.current.rho_e.values());
  simd::axpby(1.0 / dt, m_q, 1.0, rhs, rhs);
  if (boundary_.rho_e) {
    const auto bc = trace_at(*spaces_.scalar, *boundary_.rho_e, t_next);
    fem::apply_dirichlet(a, rhs, bc.dofs, bc.values);
  }
  return DiscreteField(spaces_.scalar,
                       solve_logged(a, rhs, "rho_e", state.step + 1, t_next, diagnostics));
}

DiscreteField VdScheme::step_potential(const VdState& state, const DiscreteField& rho_e_tilde,
                                       Diagnostics* diagnostics) const {
  const double t_next = state.time + params_.dt;
  SparseMatrix a = stiffness_;
  std::vector<double> rhs = load(*spaces_.scalar, sources_.potential, t_next);
  const std::vector<double> m_q = mass_.multiply(rho_e_tilde.values());
  simd::axpby(1.0, m_q, 1.0, rhs, rhs);
  if (boundary_.phi) {
    const auto bc = trace_at(*spaces_.scalar, *boundary_.phi, t_next);
    fem::apply_dirichlet(a, rhs, bc.dofs, bc.values);
  }
  return DiscreteField(spaces_.scalar,
                       solve_logged(a, rhs, "phi", state.step + 1, t_next, diagnostics));
}

VdFields VdScheme::time_filter(const VdFields& provisional, const VdFields& current,
                               const VdFields& previous) {
  auto filter = [](const DiscreteField& tilde, const DiscreteField& cur, const DiscreteField& prev) {
    DiscreteField out(tilde.space_ptr());
    simd::time_filter(tilde.values(), cur.values(), prev.values(), out.values());
    return out;
  };
  return {filter(provisional.rho, current.rho, previous.rho),
          filter(provisional.u, current.u, previous.u),
          provisional.p,
          filter(provisional.rho_e, current.rho_e, previous.rho_e),
          filter(provisional.phi, current.phi, previous.phi)};
}

SpaceTimeFunction VdScheme::source_or_zero(const SpaceTimeFunction& f) const {
  if (f) return f;
  return [](double, double, double) { return 0.0; };
}

VdFields VdScheme::provisional_step(const VdState& state, Diagnostics& diagnostics) const {
  const DiscreteField wind = extrapolate(state.current.u, state.previous.u);
  const DiscreteField rho_star = extrapolate(state.current.rho, state.previous.rho);

  auto guarded = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const StepError&) {
      throw;
    } catch (const std::exception& e) {
      throw StepError(name, e.what());
    }
  };

  VdFields tilde;
  tilde.rho = guarded("step_density", [&] { return step_density(state, wind, &diagnostics); });
  auto [u, p] = guarded("step_momentum", [&] {
    return step_momentum(state, tilde.rho, rho_star, wind, &diagnostics);
  });
  tilde.u = std::move(u);
  tilde.p = std::move(p);
  tilde.rho_e = guarded("step_charge", [&] { return step_charge(state, wind, &diagnostics); });
  tilde.phi = guarded("step_potential", [&] { return step_potential(state, tilde.rho_e, &diagnostics); });
  return tilde;
}

Diagnostics VdScheme::advance(VdState& state) const {
  Diagnostics diagnostics;
  VdFields tilde = provisional_step(state, diagnostics);
  VdFields next = time_filter(tilde, state.current, state.previous);
  state.previous = std::move(state.current);
  state.current = std::move(next);
  state.provisional = std::move(tilde);
  ++state.step;
  state.time += params_.dt;
  return diagnostics;
}

}  // namespace ehd
