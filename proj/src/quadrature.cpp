#include "ehd/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ehd {

QuadratureRule quadrature(int degree) {
  QuadratureRule rule;
  rule.degree = degree;
  if (degree == 2) {
    rule.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
  }
  if (degree == 5) {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0;
    const double a2 = (6.0 + s15) / 21.0;
    const double b1 = 1.0 - 2.0 * a1;
    const double b2 = 1.0 - 2.0 * a2;
    // Radon's rule; weights below are for unit area, halved for the reference triangle.
    const double w0 = 9.0 / 40.0;
    const double w1 = (155.0 - s15) / 1200.0;
    const double w2 = (155.0 + s15) / 1200.0;
    rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                   {b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1},
                   {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}};
    rule.weights = {w0, w1, w1, w1, w2, w2, w2};
    for (double& w : rule.weights) w *= 0.5;
    return rule;
  }
  throw std::invalid_argument("quadrature: unsupported degree " + std::to_string(degree) +
                              " (supported: 2, 5)");
}

}  // namespace ehd
