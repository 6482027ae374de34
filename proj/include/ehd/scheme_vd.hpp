#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ehd/assembly.hpp"
#include "ehd/flow.hpp"

namespace ehd {

struct VdParameters {
  double nu = 1.0;
  double peclet = 1.0;
  double j0 = 1.0;
  double dt = 0.1;
  double t_final = 1.0;

  void validate() const;
};

struct VdFields {
  DiscreteField rho;    // P2
  DiscreteField u;      // vector P2
  DiscreteField p;      // P1, zero mean
  DiscreteField rho_e;  // P2
  DiscreteField phi;    // P2
};

struct VdState {
  int step = 0;
  double time = 0.0;
  VdFields current;   // level n
  VdFields previous;  // level n-1
  std::optional<VdFields> provisional;  // tilde fields of the last step
};

/// Field values at one instant, used to populate history levels.
struct VdSnapshot {
  ScalarFunction rho, p, rho_e, phi;
  VectorFunction u;

  bool complete() const { return rho && p && rho_e && phi && u; }
};

/// Right-hand sides; an empty function means zero.
struct VdSources {
  SpaceTimeFunction density;
  SpaceTimeFunction momentum_x, momentum_y;
  SpaceTimeFunction charge;
  SpaceTimeFunction potential;
};

/// Dirichlet data. Velocity is always constrained (zero when empty); charge and
/// potential are constrained only when a trace is given. Density is pure weak
/// transport unless `rho_inflow` is set, in which case it is imposed at nodes
/// where the extrapolated wind enters the domain.
struct VdBoundary {
  VectorSpaceTimeFunction u;
  std::optional<SpaceTimeFunction> rho_inflow;
  std::optional<SpaceTimeFunction> rho_e = SpaceTimeFunction([](double, double, double) { return 0.0; });
  std::optional<SpaceTimeFunction> phi = SpaceTimeFunction([](double, double, double) { return 0.0; });
};

/// Variable-density EHD stepper: density transport, momentum with
/// extrapolated density and wind, charge transport, potential, then a
/// three-level time filter on rho, u, rho_e and phi.
class VdScheme {
 public:
  VdScheme(std::shared_ptr<const Mesh> mesh, VdParameters params, VdSources sources = {},
           VdBoundary boundary = {});

  const FlowSpaces& spaces() const { return spaces_; }
  const VdParameters& parameters() const { return params_; }
  const SparseMatrix& divergence_matrix() const { return divergence_; }

  /// Both history levels by interpolation at t0 (level n-1) and t0 + dt (level n).
  /// Throws std::invalid_argument if either snapshot is incomplete.
  VdState startup(const VdSnapshot& at_t0, const VdSnapshot& at_t1, double t0) const;
  /// Single-level start: one unfiltered step from `initial` provides level n.
  VdState bootstrap(const VdSnapshot& initial, double t0, Diagnostics* diagnostics = nullptr) const;

  /// 2 x^n - x^{n-1}
  static DiscreteField extrapolate(const DiscreteField& current, const DiscreteField& previous);

  DiscreteField step_density(const VdState& state, const DiscreteField& wind,
                             Diagnostics* diagnostics = nullptr) const;
  std::pair<DiscreteField, DiscreteField> step_momentum(const VdState& state,
                                                        const DiscreteField& rho_tilde,
                                                        const DiscreteField& rho_star,
                                                        const DiscreteField& wind,
                                                        Diagnostics* diagnostics = nullptr) const;
  DiscreteField step_charge(const VdState& state, const DiscreteField& wind,
                            Diagnostics* diagnostics = nullptr) const;
  DiscreteField step_potential(const VdState& state, const DiscreteField& rho_e_tilde,
                               Diagnostics* diagnostics = nullptr) const;

  /// x^{n+1} = x~ - (x~ - 2 x^n + x^{n-1}) / 3 for rho, u, rho_e, phi; p is copied.
  static VdFields time_filter(const VdFields& provisional, const VdFields& current,
                              const VdFields& previous);

  /// One full step; rotates history. Sub-step failures surface as StepError.
  Diagnostics advance(VdState& state) const;

 private:
  VdFields provisional_step(const VdState& state, Diagnostics& diagnostics) const;
  SpaceTimeFunction source_or_zero(const SpaceTimeFunction& f) const;
  std::vector<double> load(const DofMap& space, const SpaceTimeFunction& f, double t) const;

  FlowSpaces spaces_;
  VdParameters params_;
  VdSources sources_;
  VdBoundary boundary_;

  SparseMatrix mass_;          // scalar P2
  SparseMatrix stiffness_;     // scalar P2
  SparseMatrix vector_stiffness_;
  SparseMatrix divergence_;    // P1 x vector P2
  std::vector<double> pressure_mean_row_;
};

}  // namespace ehd
