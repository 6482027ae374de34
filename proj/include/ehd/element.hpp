#pragma once

#include <array>
#include <span>

namespace ehd {

/// Lagrange element of degree 1 or 2 on the reference triangle.
///
/// Local node order: the three vertices, then (P2 only) the midpoints of
/// edges (v0,v1), (v1,v2), (v2,v0).
class ReferenceElement {
 public:
  static constexpr int kMaxLocalDofs = 6;

  explicit ReferenceElement(int degree);

  int degree() const { return degree_; }
  int n_local_dofs() const { return degree_ == 1 ? 3 : 6; }

  void values(double xi, double eta, std::span<double> out) const;
  /// Reference gradients (d/dxi, d/deta) of every shape function.
  void gradients(double xi, double eta, std::span<std::array<double, 2>> out) const;
  std::array<double, 2> node(int local) const;

 private:
  int degree_;
};

}  // namespace ehd
