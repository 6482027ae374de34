#pragma once

#include "ehd/dofmap.hpp"

namespace ehd::mms {

/// Closed-form scalar field of (x, y, t) with its analytic derivatives.
struct ScalarExact {
  SpaceTimeFunction value, dx, dy, dxx, dyy, dt;

  double operator()(double x, double y, double t) const { return value(x, y, t); }
  double laplacian(double x, double y, double t) const { return dxx(x, y, t) + dyy(x, y, t); }
  ScalarFunction at(double t) const;
};

struct VectorExact {
  ScalarExact x, y;

  std::array<double, 2> operator()(double px, double py, double t) const {
    return {x.value(px, py, t), y.value(px, py, t)};
  }
  double divergence(double px, double py, double t) const {
    return x.dx(px, py, t) + y.dy(px, py, t);
  }
  VectorFunction at(double t) const;
};

/// Variable-density manufactured solution on [0,1]^2:
///   rho = 2 + x cos(sin t) + y sin(sin t),  u = (-y cos t, x cos t),
///   p = sin x sin y sin t,  rho_e = 2 sin x sin y sin t,  phi = sin x sin y sin t.
struct VdExact {
  ScalarExact rho;
  VectorExact u;
  ScalarExact p, rho_e, phi;
};

/// Temperature-model manufactured solution: the same u, p, with
///   q = 2 sin x sin y sin t,  phi = sin x sin y sin t,  theta = (x - y) cos t.
struct TempExact {
  VectorExact u;
  ScalarExact p, q, phi, theta;
};

VdExact exact_vd();
TempExact exact_temp();

}  // namespace ehd::mms
