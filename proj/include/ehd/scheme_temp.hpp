#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "ehd/assembly.hpp"
#include "ehd/flow.hpp"

namespace ehd {

struct TempParameters {
  double t_ratio = 1.0;  // T
  double m = 1.0;        // M
  double c = 1.0;        // C
  double alpha = 1.0;
  double prandtl = 1.0;
  double dt = 0.1;
  double t_final = 1.0;

  void validate() const;
  /// (T/M)^2 C, the Coulomb force coefficient in the momentum equation.
  double coulomb() const { return (t_ratio / m) * (t_ratio / m) * c; }
  /// T/M^2, the drift coefficient in the charge equation.
  double migration() const { return t_ratio / (m * m); }
};

struct TempFields {
  DiscreteField u;      // vector P2
  DiscreteField p;      // P1, zero mean
  DiscreteField q;      // P2
  DiscreteField phi;    // P2
  DiscreteField theta;  // P2
};

struct TempState {
  int step = 0;
  double time = 0.0;
  TempFields current;
};

struct TempSnapshot {
  VectorFunction u;
  ScalarFunction p, q, phi, theta;

  bool complete() const { return u && p && q && phi && theta; }
};

/// Right-hand sides; an empty function means zero. `gauss` is the source of
/// (1/C) lap(phi) + q = gauss.
struct TempSources {
  SpaceTimeFunction flow_x, flow_y;
  SpaceTimeFunction charge;
  SpaceTimeFunction gauss;
  SpaceTimeFunction temperature;
};

/// Velocity is always constrained (zero when empty); q, phi and theta only
/// when a trace is given.
struct TempBoundary {
  VectorSpaceTimeFunction u;
  std::optional<SpaceTimeFunction> q = SpaceTimeFunction([](double, double, double) { return 0.0; });
  std::optional<SpaceTimeFunction> phi = SpaceTimeFunction([](double, double, double) { return 0.0; });
  std::optional<SpaceTimeFunction> theta = SpaceTimeFunction([](double, double, double) { return 0.0; });
};

/// First-order decoupled stepper for the temperature-dependent model:
/// flow (lagged Coulomb force), coupled charge/potential, temperature.
class TempScheme {
 public:
  TempScheme(std::shared_ptr<const Mesh> mesh, TempParameters params, TempSources sources = {},
             TempBoundary boundary = {});

  const FlowSpaces& spaces() const { return spaces_; }
  const TempParameters& parameters() const { return params_; }
  const SparseMatrix& divergence_matrix() const { return divergence_; }
  const SparseMatrix& mass_matrix() const { return mass_; }
  const SparseMatrix& stiffness_matrix() const { return stiffness_; }

  TempState startup(const TempSnapshot& initial, double t0) const;

  std::pair<DiscreteField, DiscreteField> step_flow(const TempState& state,
                                                    Diagnostics* diagnostics = nullptr) const;
  /// Coupled (q, phi) solve. Drift and convective flux use level-n q and u.
  std::pair<DiscreteField, DiscreteField> step_charge_potential(
      const TempState& state, Diagnostics* diagnostics = nullptr) const;
  DiscreteField step_temperature(const TempState& state, Diagnostics* diagnostics = nullptr) const;

  Diagnostics advance(TempState& state) const;

 private:
  std::vector<double> load(const SpaceTimeFunction& f, double t) const;

  FlowSpaces spaces_;
  TempParameters params_;
  TempSources sources_;
  TempBoundary boundary_;

  SparseMatrix mass_;
  SparseMatrix stiffness_;
  SparseMatrix vector_mass_;
  SparseMatrix vector_stiffness_;
  SparseMatrix divergence_;
  std::vector<double> pressure_mean_row_;
};

}  // namespace ehd
