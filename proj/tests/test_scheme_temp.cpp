#include <gtest/gtest.h>

#include <cmath>

#include "ehd/convergence.hpp"
#include "ehd/scheme_temp.hpp"

using namespace ehd;

namespace {

std::shared_ptr<const Mesh> square(int n) { return std::make_shared<const Mesh>(Mesh::unit_square(n)); }

TempSnapshot zero_snapshot() {
  TempSnapshot s;
  s.u = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
  s.p = s.q = s.phi = s.theta = [](double, double) { return 0.0; };
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

TempSnapshot exact_snapshot(const mms::TempExact& e, double t) {
  TempSnapshot s;
  s.u = e.u.at(t);
  s.p = e.p.at(t);
  s.q = e.q.at(t);
  s.phi = e.phi.at(t);
  s.theta = e.theta.at(t);
  return s;
}

TempBoundary exact_boundary(const mms::TempExact& e) {
  TempBoundary bc;
  bc.u = [u = e.u](double x, double y, double t) { return u(x, y, t); };
  bc.q = e.q.value;
  bc.phi = e.phi.value;
  bc.theta = e.theta.value;
  return bc;
}

}  // namespace

TEST(TempParameters, DerivedCoefficients) {
  TempParameters p;
  p.t_ratio = 2.0;
  p.m = 4.0;
  p.c = 3.0;
  EXPECT_DOUBLE_EQ(p.coulomb(), 0.75);
  EXPECT_DOUBLE_EQ(p.migration(), 0.125);
  p.prandtl = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(TempAdvance, ZeroDataStaysZero) {
  const TempScheme scheme(square(3), TempParameters{});
  auto st = scheme.startup(zero_snapshot(), 0.0);
  for (int k = 0; k < 2; ++k) {
    const auto diag = scheme.advance(st);
    ASSERT_EQ(diag.size(), 3u);
    EXPECT_EQ(diag[0].field, "u,p");
    EXPECT_EQ(diag[1].field, "q,phi");
    EXPECT_EQ(diag[2].field, "theta");
  }
  EXPECT_EQ(st.step, 2);
  for (const DiscreteField* f : {&st.current.u, &st.current.p, &st.current.q, &st.current.phi, &st.current.theta}) {
    EXPECT_LT(max_abs(f->values()), 1e-14);
  }
}

TEST(TempStartup, IncompleteSnapshotThrowsAndPressureIsCentred) {
  const TempScheme scheme(square(2), TempParameters{});
  TempSnapshot s = zero_snapshot();
  s.theta = nullptr;
  EXPECT_THROW(scheme.startup(s, 0.0), std::invalid_argument);
  s = zero_snapshot();
  s.p = [](double x, double) { return 3.0 + x; };
  EXPECT_NEAR(scheme.startup(s, 0.0).current.p.integral(), 0.0, 1e-14);
}

TEST(TempChargePotential, CoupledBlocksAreSatisfied) {
  // q, phi from the manufactured data at t; check both block rows directly.
  const auto e = mms::exact_temp();
  TempParameters p;
  p.dt = 0.1;
  p.t_ratio = 1.3;
  const auto forcing = mms::temp_forcing(e, p, 3);
  const TempScheme scheme(square(4), p, forcing.sources(), exact_boundary(e));
  const auto st = scheme.startup(exact_snapshot(e, 0.2), 0.2);
  const auto [q, phi] = scheme.step_charge_potential(st);
  // second row: M q - (1/C) K phi = (gauss, xi) away from the boundary
  const auto mq = scheme.mass_matrix().multiply(q.values());
  const auto kphi = scheme.stiffness_matrix().multiply(phi.values());
  const auto& s = *scheme.spaces().scalar;
  const auto gauss = fem::assemble_load(s, [&](const fem::QuadPoint& qp) {
    return forcing.sources().gauss(qp.x.x, qp.x.y, 0.3);
  });
  for (int i = 0; i < s.n_dofs(); ++i) {
    if (!s.is_boundary_node(i)) EXPECT_NEAR(mq[i] - kphi[i] / p.c, gauss[i], 1e-12);
  }
  EXPECT_LT(fem::l2_error(q, e.q.at(0.3)), 5e-2);
  EXPECT_LT(fem::l2_error(phi, e.phi.at(0.3)), 5e-3);
}

TEST(TempAdvance, DiscreteIncompressibilityAfterEveryFlowSolve) {
  const auto e = mms::exact_temp();
  TempParameters p;
  p.dt = 0.125;
  const auto forcing = mms::temp_forcing(e, p, 3);
  const TempScheme scheme(square(6), p, forcing.sources(), exact_boundary(e));
  auto st = scheme.startup(exact_snapshot(e, 0.0), 0.0);
  for (int k = 0; k < 8; ++k) {
    for (const auto& r : scheme.advance(st)) EXPECT_LT(r.residual, 1e-9);
    const auto& u = st.current.u;
    EXPECT_LE(max_divergence_residual(scheme.divergence_matrix(), u), 1e-9 * max_abs(u.values()));
    EXPECT_NEAR(st.current.p.integral(), 0.0, 1e-10);
  }
  EXPECT_NEAR(st.time, 1.0, 1e-14);
}

TEST(TempAdvance, ManufacturedErrorsShrinkUnderRefinement) {
  const auto e = mms::exact_temp();
  std::vector<std::array<double, 4>> errs;
  for (int n : {4, 8}) {
    TempParameters p;
    p.dt = 1.0 / n;
    const auto forcing = mms::temp_forcing(e, p, 3);
    const TempScheme scheme(square(n), p, forcing.sources(), exact_boundary(e));
    auto st = scheme.startup(exact_snapshot(e, 0.0), 0.0);
    while (st.step < n) scheme.advance(st);
    errs.push_back({fem::l2_error(st.current.u, e.u.at(1.0)), fem::l2_error(st.current.q, e.q.at(1.0)),
                    fem::l2_error(st.current.phi, e.phi.at(1.0)), fem::l2_error(st.current.theta, e.theta.at(1.0))});
  }
  for (int k = 0; k < 4; ++k) EXPECT_LT(errs[1][k], errs[0][k]) << k;
}

TEST(TempAdvance, SubStepFailureIsNamed) {
  TempSources src;
  src.flow_x = [](double, double, double) -> double { throw std::runtime_error("bad flow"); };
  const TempScheme scheme(square(2), TempParameters{}, src);
  auto st = scheme.startup(zero_snapshot(), 0.0);
  try {
    scheme.advance(st);
    FAIL() << "expected StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.step_name(), "step_flow");
  }
  EXPECT_EQ(st.step, 0);
}
