#pragma once

#include <array>
#include <vector>

namespace ehd {

/// Rule on the reference triangle {(0,0),(1,0),(0,1)}. Points are barycentric
/// (l0, l1, l2) with reference coordinates xi = l1, eta = l2; weights sum to 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
  double xi(int q) const { return points[q][1]; }
  double eta(int q) const { return points[q][2]; }
};

/// degree 2: 3-point edge-midpoint rule; degree 5: 7-point symmetric rule.
/// Throws std::invalid_argument for any other degree.
QuadratureRule quadrature(int degree);

inline constexpr int kDefaultQuadratureDegree = 5;

}  // namespace ehd
