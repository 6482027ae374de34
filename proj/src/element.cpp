#include "ehd/element.hpp"

#include <stdexcept>
#include <string>

namespace ehd {

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
  if (degree != 1 && degree != 2) {
    throw std::invalid_argument("ReferenceElement: degree must be 1 or 2, got " +
                                std::to_string(degree));
  }
}

void ReferenceElement::values(double xi, double eta, std::span<double> out) const {
  const double l0 = 1.0 - xi - eta;
  const double l1 = xi;
  const double l2 = eta;
  if (degree_ == 1) {
    out[0] = l0;
    out[1] = l1;
    out[2] = l2;
    return;
  }
  out[0] = l0 * (2.0 * l0 - 1.0);
  out[1] = l1 * (2.0 * l1 - 1.0);
  out[2] = l2 * (2.0 * l2 - 1.0);
  out[3] = 4.0 * l0 * l1;
  out[4] = 4.0 * l1 * l2;
  out[5] = 4.0 * l2 * l0;
}

void ReferenceElement::gradients(double xi, double eta,
                                 std::span<std::array<double, 2>> out) const {
  if (degree_ == 1) {
    out[0] = {-1.0, -1.0};
    out[1] = {1.0, 0.0};
    out[2] = {0.0, 1.0};
    return;
  }
  const double l0 = 1.0 - xi - eta;
  const double l1 = xi;
  const double l2 = eta;
  // grad l0 = (-1,-1), grad l1 = (1,0), grad l2 = (0,1)
  const double d0 = 4.0 * l0 - 1.0;
  out[0] = {-d0, -d0};
  out[1] = {4.0 * l1 - 1.0, 0.0};
  out[2] = {0.0, 4.0 * l2 - 1.0};
  out[3] = {4.0 * (l0 - l1), -4.0 * l1};
  out[4] = {4.0 * l2, 4.0 * l1};
  out[5] = {-4.0 * l2, 4.0 * (l0 - l2)};
}

std::array<double, 2> ReferenceElement::node(int local) const {
  static constexpr std::array<std::array<double, 2>, 6> kNodes{
      {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}}};
  if (local < 0 || local >= n_local_dofs()) {
    throw std::out_of_range("ReferenceElement::node: local index " + std::to_string(local));
  }
  return kNodes[local];
}

}  // namespace ehd
