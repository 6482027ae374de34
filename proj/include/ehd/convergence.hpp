#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ehd/forcing.hpp"

namespace ehd::mms {

enum class Model { Vd, Temp };

std::string model_name(Model model);
/// "vd" or "temp"; throws std::invalid_argument otherwise.
Model parse_model(const std::string& name);

/// Report columns, in table order.
const std::vector<std::string>& field_names(Model model);
/// Accepted `--param` keys: nu, Pe, J0 for vd; T, M, C, alpha, Pr for temp.
const std::vector<std::string>& parameter_keys(Model model);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Density boundary handling in vd runs: pure weak transport, or the exact
/// trace imposed where the extrapolated wind enters the domain.
enum class DensityBoundary { None, Inflow };

struct StudyConfig {
  Model model = Model::Vd;
  std::vector<int> levels{4, 8, 16, 32};
  double t_final = 1.0;
  /// Steps per level = round(N / dt_ratio), so dt = t_final * dt_ratio / N nominally.
  double dt_ratio = 1.0;
  std::map<std::string, double> params;
  std::uint64_t seed = kDefaultSeed;
  DensityBoundary density_boundary = DensityBoundary::Inflow;
  /// Run levels on separate threads.
  bool parallel = true;
  /// Receives one line per linear solve when set. Lines from concurrent
  /// levels are buffered and flushed per level, in level order.
  std::ostream* log = nullptr;
};

/// Throws std::invalid_argument for empty, non-positive or non-doubling
/// levels, non-positive t_final/dt_ratio, unknown or non-positive parameters.
void validate(const StudyConfig& config);

VdParameters vd_parameters(const StudyConfig& config, double dt);
TempParameters temp_parameters(const StudyConfig& config, double dt);

/// Number of time steps and the step size for level n.
struct TimeGrid {
  int steps = 0;
  double dt = 0.0;
};
TimeGrid time_grid(const StudyConfig& config, int n);

struct LevelRow {
  int n = 0;
  double dt = 0.0;
  int steps = 0;
  bool ok = false;
  std::string failure;  // "<step name>: <cause>" when !ok
  std::vector<double> errors;
  std::vector<std::optional<double>> orders;
  /// max over flow solves of max_i |(div u, q_i)| / ||u||_inf
  double max_divergence = 0.0;
  double seconds = 0.0;
};

struct ConvergenceReport {
  Model model = Model::Vd;
  std::vector<std::string> fields;
  std::vector<LevelRow> rows;
  /// Ordered key/value metadata: model, parameters, time rule, seed.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<OracleRecord> oracle;

  bool all_ok() const;
};

/// log(e_prev / e_curr) / log(n_curr / n_prev); empty unless both errors are
/// positive and finite.
std::optional<double> observed_order(double e_prev, double e_curr, int n_prev = 1, int n_curr = 2);

/// Runs one level. Throws std::logic_error if the forcing is unverified.
LevelRow run_vd_level(const StudyConfig& config, const VdForcing& forcing, int n,
                      std::ostream* log = nullptr);
LevelRow run_temp_level(const StudyConfig& config, const TempForcing& forcing, int n,
                        std::ostream* log = nullptr);

/// Verifies the forcing, then runs every level and fills orders between
/// consecutive successful rows. An oracle mismatch propagates as OracleMismatch.
ConvergenceReport run_convergence(const StudyConfig& config);

/// `N,err_<f>...,order_<f>...`; errors as %.3e, orders as %.4f, blank when undefined.
std::string to_csv(const ConvergenceReport& report);
/// Metadata list followed by one pipe table: N, then "‖e_f‖₀ | Order" per field.
std::string to_markdown(const ConvergenceReport& report);

}  // namespace ehd::mms
