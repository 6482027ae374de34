#include "ehd/exact.hpp"

#include <cmath>

namespace ehd::mms {

ScalarFunction ScalarExact::at(double t) const {
  return [f = value, t](double x, double y) { return f(x, y, t); };
}

VectorFunction VectorExact::at(double t) const {
  return [fx = x.value, fy = y.value, t](double px, double py) -> std::array<double, 2> {
    return {fx(px, py, t), fy(px, py, t)};
  };
}

namespace {

auto zero() {
  return [](double, double, double) { return 0.0; };
}

/// amplitude * sin x sin y sin t
ScalarExact sine_product(double amplitude) {
  using std::cos;
  using std::sin;
  const double a = amplitude;
  ScalarExact f;
  f.value = [a](double x, double y, double t) { return a * sin(x) * sin(y) * sin(t); };
  f.dx = [a](double x, double y, double t) { return a * cos(x) * sin(y) * sin(t); };
  f.dy = [a](double x, double y, double t) { return a * sin(x) * cos(y) * sin(t); };
  f.dxx = [a](double x, double y, double t) { return -a * sin(x) * sin(y) * sin(t); };
  f.dyy = [a](double x, double y, double t) { return -a * sin(x) * sin(y) * sin(t); };
  f.dt = [a](double x, double y, double t) { return a * sin(x) * sin(y) * cos(t); };
  return f;
}

/// u = (-y cos t, x cos t)
VectorExact rotation() {
  using std::cos;
  using std::sin;
  VectorExact u;
  u.x.value = [](double, double y, double t) { return -y * cos(t); };
  u.x.dx = zero();
  u.x.dy = [](double, double, double t) { return -cos(t); };
  u.x.dxx = zero();
  u.x.dyy = zero();
  u.x.dt = [](double, double y, double t) { return y * sin(t); };

  u.y.value = [](double x, double, double t) { return x * cos(t); };
  u.y.dx = [](double, double, double t) { return cos(t); };
  u.y.dy = zero();
  u.y.dxx = zero();
  u.y.dyy = zero();
  u.y.dt = [](double x, double, double t) { return -x * sin(t); };
  return u;
}

}  // namespace

VdExact exact_vd() {
  using std::cos;
  using std::sin;
  VdExact e;
  e.rho.value = [](double x, double y, double t) {
    return 2.0 + x * cos(sin(t)) + y * sin(sin(t));
  };
  e.rho.dx = [](double, double, double t) { return cos(sin(t)); };
  e.rho.dy = [](double, double, double t) { return sin(sin(t)); };
  e.rho.dxx = zero();
  e.rho.dyy = zero();
  e.rho.dt = [](double x, double y, double t) {
    return cos(t) * (-x * sin(sin(t)) + y * cos(sin(t)));
  };
  e.u = rotation();
  e.p = sine_product(1.0);
  e.rho_e = sine_product(2.0);
  e.phi = sine_product(1.0);
  return e;
}

TempExact exact_temp() {
  using std::cos;
  using std::sin;
  TempExact e;
  e.u = rotation();
  e.p = sine_product(1.0);
  e.q = sine_product(2.0);
  e.phi = sine_product(1.0);
  e.theta.value = [](double x, double y, double t) { return (x - y) * cos(t); };
  e.theta.dx = [](double, double, double t) { return cos(t); };
  e.theta.dy = [](double, double, double t) { return -cos(t); };
  e.theta.dxx = zero();
  e.theta.dyy = zero();
  e.theta.dt = [](double x, double y, double t) { return -(x - y) * sin(t); };
  return e;
}

}  // namespace ehd::mms
