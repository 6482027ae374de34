// Independent reference computations for tests. Nothing here calls the
// library's solvers or assembly routines.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

/// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    if (a[piv][k] == 0.0) throw std::runtime_error("dense_solve: singular");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Integral of l0^a l1^b l2^c over a triangle of the given area.
inline double barycentric_monomial(int a, int b, int c, double area) {
  return 2.0 * area * factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
}

/// Integral of x^a y^b over the reference triangle {(0,0),(1,0),(0,1)}.
inline double reference_monomial(int a, int b) { return barycentric_monomial(0, a, b, 0.5); }

/// P2 shape function k as a polynomial in barycentrics: list of (coef, exponents).
struct Term {
  double coef;
  std::array<int, 3> exp;
};
inline std::vector<Term> p2_shape(int k) {
  // vertices: l_i (2 l_i - 1); edge (i, j): 4 l_i l_j with edges (0,1), (1,2), (2,0)
  static const int edge[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  std::vector<Term> t;
  if (k < 3) {
    std::array<int, 3> sq{0, 0, 0}, lin{0, 0, 0};
    sq[k] = 2;
    lin[k] = 1;
    t.push_back({2.0, sq});
    t.push_back({-1.0, lin});
  } else {
    std::array<int, 3> e{0, 0, 0};
    e[edge[k - 3][0]] = 1;
    e[edge[k - 3][1]] = 1;
    t.push_back({4.0, e});
  }
  return t;
}

/// Exact local P2 mass matrix entry from the barycentric monomial formula.
inline double p2_local_mass(int i, int j, double area) {
  double s = 0.0;
  for (const Term& a : p2_shape(i)) {
    for (const Term& b : p2_shape(j)) {
      s += a.coef * b.coef *
           barycentric_monomial(a.exp[0] + b.exp[0], a.exp[1] + b.exp[1], a.exp[2] + b.exp[2], area);
    }
  }
  return s;
}

inline double order(double e_prev, double e_curr, double ratio = 2.0) {
  return std::log(e_prev / e_curr) / std::log(ratio);
}

}  // namespace oracle
