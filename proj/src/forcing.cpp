#include "ehd/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace ehd::mms {

namespace fd {

double dx(const SpaceTimeFunction& f, double x, double y, double t, double h) {
  return (f(x + h, y, t) - f(x - h, y, t)) / (2.0 * h);
}
double dy(const SpaceTimeFunction& f, double x, double y, double t, double h) {
  return (f(x, y + h, t) - f(x, y - h, t)) / (2.0 * h);
}
double dt(const SpaceTimeFunction& f, double x, double y, double t, double h) {
  return (f(x, y, t + h) - f(x, y, t - h)) / (2.0 * h);
}
double laplacian(const SpaceTimeFunction& f, double x, double y, double t, double h) {
  const double c = f(x, y, t);
  return (f(x + h, y, t) + f(x - h, y, t) + f(x, y + h, t) + f(x, y - h, t) - 4.0 * c) / (h * h);
}

}  // namespace fd

void verify_source(Source& source, const std::vector<SpaceTimeFunction>& fd_residual,
                   std::uint64_t seed, double tolerance) {
  if (fd_residual.size() != source.components.size()) {
    throw OracleMismatch(source.equation, "oracle for '" + source.equation +
                                              "' has the wrong number of components");
  }
  OracleRecord rec;
  rec.equation = source.equation;
  rec.seed = seed;
  rec.n_points = kOraclePoints;
  rec.step = kOracleStep;
  rec.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < kOraclePoints; ++k) {
    const double x = unit(rng);
    const double y = unit(rng);
    const double t = unit(rng);
    for (std::size_t c = 0; c < source.components.size(); ++c) {
      const double diff = std::abs(source.components[c](x, y, t) - fd_residual[c](x, y, t));
      rec.max_abs_diff = std::max(rec.max_abs_diff, std::isnan(diff) ? INFINITY : diff);
    }
  }
  rec.passed = rec.max_abs_diff <= tolerance;
  source.record = rec;
  if (!rec.passed) {
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "forcing oracle rejected '%s': max |closed form - finite difference| = %.3e > %.1e",
                  source.equation.c_str(), rec.max_abs_diff, tolerance);
    throw OracleMismatch(source.equation, buf);
  }
}

namespace {

void require_verified(const Source& s) {
  if (!s.verified()) {
    throw std::logic_error("manufactured source '" + s.equation +
                           "' has not passed the finite-difference oracle");
  }
}

/// Pointwise product of two space-time functions.
SpaceTimeFunction times(SpaceTimeFunction a, SpaceTimeFunction b) {
  return [a = std::move(a), b = std::move(b)](double x, double y, double t) {
    return a(x, y, t) * b(x, y, t);
  };
}

}  // namespace

bool VdForcing::all_verified() const {
  return density.verified() && momentum.verified() && charge.verified() && potential.verified();
}

std::vector<OracleRecord> VdForcing::records() const {
  return {density.record, momentum.record, charge.record, potential.record};
}

VdSources VdForcing::sources() const {
  for (const Source* s : {&density, &momentum, &charge, &potential}) require_verified(*s);
  VdSources out;
  out.density = density.components.at(0);
  out.momentum_x = momentum.components.at(0);
  out.momentum_y = momentum.components.at(1);
  out.charge = charge.components.at(0);
  out.potential = potential.components.at(0);
  return out;
}

bool TempForcing::all_verified() const {
  return flow.verified() && charge.verified() && gauss.verified() && temperature.verified();
}

std::vector<OracleRecord> TempForcing::records() const {
  return {flow.record, charge.record, gauss.record, temperature.record};
}

TempSources TempForcing::sources() const {
  for (const Source* s : {&flow, &charge, &gauss, &temperature}) require_verified(*s);
  TempSources out;
  out.flow_x = flow.components.at(0);
  out.flow_y = flow.components.at(1);
  out.charge = charge.components.at(0);
  out.gauss = gauss.components.at(0);
  out.temperature = temperature.components.at(0);
  return out;
}

VdForcing vd_forcing(const VdExact& e, const VdParameters& params, std::uint64_t seed) {
  const double nu = params.nu;
  const double pe = params.peclet;
  const double j0 = params.j0;
  VdForcing f;

  // Closed forms from the analytic derivatives.
  f.density.equation = "vd.density";
  f.density.components = {[e](double x, double y, double t) {
    const double u1 = e.u.x(x, y, t), u2 = e.u.y(x, y, t);
    return e.rho.dt(x, y, t) + u1 * e.rho.dx(x, y, t) + u2 * e.rho.dy(x, y, t) +
           e.rho(x, y, t) * e.u.divergence(x, y, t);
  }};

  f.momentum.equation = "vd.momentum";
  for (int c = 0; c < 2; ++c) {
    f.momentum.components.push_back([e, nu, c](double x, double y, double t) {
      const ScalarExact& uc = (c == 0) ? e.u.x : e.u.y;
      const double u1 = e.u.x(x, y, t), u2 = e.u.y(x, y, t);
      const double material = uc.dt(x, y, t) + u1 * uc.dx(x, y, t) + u2 * uc.dy(x, y, t);
      const double grad_p = (c == 0) ? e.p.dx(x, y, t) : e.p.dy(x, y, t);
      return e.rho(x, y, t) * material + grad_p - nu * uc.laplacian(x, y, t);
    });
  }

  f.charge.equation = "vd.charge";
  f.charge.components = {[e, pe, j0](double x, double y, double t) {
    const double q = e.rho_e(x, y, t);
    const double u1 = e.u.x(x, y, t), u2 = e.u.y(x, y, t);
    return e.rho_e.dt(x, y, t) + u1 * e.rho_e.dx(x, y, t) + u2 * e.rho_e.dy(x, y, t) +
           q * e.u.divergence(x, y, t) - e.rho_e.laplacian(x, y, t) / pe + j0 * q;
  }};

  f.potential.equation = "vd.potential";
  f.potential.components = {[e](double x, double y, double t) {
    return -e.phi.laplacian(x, y, t) - e.rho_e(x, y, t);
  }};

  // Independent residuals from field values only.
  const SpaceTimeFunction rho = e.rho.value;
  const SpaceTimeFunction u1 = e.u.x.value;
  const SpaceTimeFunction u2 = e.u.y.value;
  const SpaceTimeFunction p = e.p.value;
  const SpaceTimeFunction q = e.rho_e.value;
  const SpaceTimeFunction phi = e.phi.value;

  const SpaceTimeFunction rho_u1 = times(rho, u1), rho_u2 = times(rho, u2);
  const SpaceTimeFunction q_u1 = times(q, u1), q_u2 = times(q, u2);

  verify_source(f.density,
                {[=](double x, double y, double t) {
                  return fd::dt(rho, x, y, t) + fd::dx(rho_u1, x, y, t) + fd::dy(rho_u2, x, y, t);
                }},
                seed);

  std::vector<SpaceTimeFunction> momentum_fd;
  for (int c = 0; c < 2; ++c) {
    const SpaceTimeFunction uc = (c == 0) ? u1 : u2;
    momentum_fd.push_back([=](double x, double y, double t) {
      const double material = fd::dt(uc, x, y, t) + u1(x, y, t) * fd::dx(uc, x, y, t) +
                              u2(x, y, t) * fd::dy(uc, x, y, t);
      const double grad_p = (c == 0) ? fd::dx(p, x, y, t) : fd::dy(p, x, y, t);
      return rho(x, y, t) * material + grad_p - nu * fd::laplacian(uc, x, y, t);
    });
  }
  verify_source(f.momentum, momentum_fd, seed + 1);

  verify_source(f.charge,
                {[=](double x, double y, double t) {
                  return fd::dt(q, x, y, t) + fd::dx(q_u1, x, y, t) + fd::dy(q_u2, x, y, t) -
                         fd::laplacian(q, x, y, t) / pe + j0 * q(x, y, t);
                }},
                seed + 2);

  verify_source(f.potential,
                {[=](double x, double y, double t) {
                  return -fd::laplacian(phi, x, y, t) - q(x, y, t);
                }},
                seed + 3);
  return f;
}

TempForcing temp_forcing(const TempExact& e, const TempParameters& params, std::uint64_t seed) {
  const double coulomb = params.coulomb();
  const double mig = params.migration();
  const double alpha = params.alpha;
  const double inv_c = 1.0 / params.c;
  const double inv_pr = 1.0 / params.prandtl;
  TempForcing f;

  f.flow.equation = "temp.flow";
  for (int c = 0; c < 2; ++c) {
    f.flow.components.push_back([e, coulomb, c](double x, double y, double t) {
      const ScalarExact& uc = (c == 0) ? e.u.x : e.u.y;
      const double u1 = e.u.x(x, y, t), u2 = e.u.y(x, y, t);
      const double material = uc.dt(x, y, t) + u1 * uc.dx(x, y, t) + u2 * uc.dy(x, y, t);
      const double grad_p = (c == 0) ? e.p.dx(x, y, t) : e.p.dy(x, y, t);
      const double grad_phi = (c == 0) ? e.phi.dx(x, y, t) : e.phi.dy(x, y, t);
      return material + grad_p - uc.laplacian(x, y, t) + coulomb * e.q(x, y, t) * grad_phi;
    });
  }

  f.charge.equation = "temp.charge";
  f.charge.components = {[e, mig, alpha](double x, double y, double t) {
    const double q = e.q(x, y, t);
    const double qx = e.q.dx(x, y, t), qy = e.q.dy(x, y, t);
    const double drift = -mig * (e.phi.dx(x, y, t) * qx + e.phi.dy(x, y, t) * qy +
                                 q * e.phi.laplacian(x, y, t));
    const double advect = e.u.x(x, y, t) * qx + e.u.y(x, y, t) * qy + q * e.u.divergence(x, y, t);
    return e.q.dt(x, y, t) + drift + advect - alpha * e.q.laplacian(x, y, t);
  }};

  f.gauss.equation = "temp.gauss";
  f.gauss.components = {[e, inv_c](double x, double y, double t) {
    return inv_c * e.phi.laplacian(x, y, t) + e.q(x, y, t);
  }};

  f.temperature.equation = "temp.temperature";
  f.temperature.components = {[e, inv_pr](double x, double y, double t) {
    return e.theta.dt(x, y, t) + e.u.x(x, y, t) * e.theta.dx(x, y, t) +
           e.u.y(x, y, t) * e.theta.dy(x, y, t) - inv_pr * e.theta.laplacian(x, y, t);
  }};

  const SpaceTimeFunction u1 = e.u.x.value;
  const SpaceTimeFunction u2 = e.u.y.value;
  const SpaceTimeFunction p = e.p.value;
  const SpaceTimeFunction q = e.q.value;
  const SpaceTimeFunction phi = e.phi.value;
  const SpaceTimeFunction theta = e.theta.value;

  std::vector<SpaceTimeFunction> flow_fd;
  for (int c = 0; c < 2; ++c) {
    const SpaceTimeFunction uc = (c == 0) ? u1 : u2;
    flow_fd.push_back([=](double x, double y, double t) {
      const double material = fd::dt(uc, x, y, t) + u1(x, y, t) * fd::dx(uc, x, y, t) +
                              u2(x, y, t) * fd::dy(uc, x, y, t);
      const double grad_p = (c == 0) ? fd::dx(p, x, y, t) : fd::dy(p, x, y, t);
      const double grad_phi = (c == 0) ? fd::dx(phi, x, y, t) : fd::dy(phi, x, y, t);
      return material + grad_p - fd::laplacian(uc, x, y, t) + coulomb * q(x, y, t) * grad_phi;
    });
  }
  verify_source(f.flow, flow_fd, seed);

  // Charge flux ((-(T/M^2) grad phi + u) q), differentiated as a whole.
  const SpaceTimeFunction flux_x = [=](double x, double y, double t) {
    return (-mig * fd::dx(phi, x, y, t) + u1(x, y, t)) * q(x, y, t);
  };
  const SpaceTimeFunction flux_y = [=](double x, double y, double t) {
    return (-mig * fd::dy(phi, x, y, t) + u2(x, y, t)) * q(x, y, t);
  };
  verify_source(f.charge,
                {[=](double x, double y, double t) {
                  return fd::dt(q, x, y, t) + fd::dx(flux_x, x, y, t) + fd::dy(flux_y, x, y, t) -
                         alpha * fd::laplacian(q, x, y, t);
                }},
                seed + 1);

  verify_source(f.gauss,
                {[=](double x, double y, double t) {
                  return inv_c * fd::laplacian(phi, x, y, t) + q(x, y, t);
                }},
                seed + 2);

  verify_source(f.temperature,
                {[=](double x, double y, double t) {
                  return fd::dt(theta, x, y, t) + u1(x, y, t) * fd::dx(theta, x, y, t) +
                         u2(x, y, t) * fd::dy(theta, x, y, t) - inv_pr * fd::laplacian(theta, x, y, t);
                }},
                seed + 3);
  return f;
}

}  // namespace ehd::mms
