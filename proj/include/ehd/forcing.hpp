#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehd/exact.hpp"
#include "ehd/scheme_temp.hpp"
#include "ehd/scheme_vd.hpp"

namespace ehd::mms {

inline constexpr double kOracleStep = 1e-4;
inline constexpr double kOracleTolerance = 1e-6;
inline constexpr int kOraclePoints = 20;

/// Outcome of comparing a closed-form source against the finite-difference residual.
struct OracleRecord {
  std::string equation;
  std::uint64_t seed = 0;
  int n_points = 0;
  double step = 0.0;
  double tolerance = 0.0;
  double max_abs_diff = 0.0;
  bool passed = false;
};

class OracleMismatch : public std::runtime_error {
 public:
  OracleMismatch(const std::string& equation, const std::string& what)
      : std::runtime_error(what), equation_(equation) {}
  const std::string& equation() const { return equation_; }

 private:
  std::string equation_;
};

/// A manufactured source: the continuous residual of the exact fields,
/// one closed-form function per equation component.
struct Source {
  std::string equation;
  std::vector<SpaceTimeFunction> components;
  OracleRecord record;

  bool verified() const { return record.passed; }
};

/// Compares each component of `source` with `fd_residual` at kOraclePoints
/// random (x, y, t) in [0,1]^3. Marks the source verified on success; throws
/// OracleMismatch naming the equation otherwise.
void verify_source(Source& source, const std::vector<SpaceTimeFunction>& fd_residual,
                   std::uint64_t seed, double tolerance = kOracleTolerance);

/// Value-only central differences, step kOracleStep by default.
namespace fd {
double dx(const SpaceTimeFunction& f, double x, double y, double t, double h = kOracleStep);
double dy(const SpaceTimeFunction& f, double x, double y, double t, double h = kOracleStep);
double dt(const SpaceTimeFunction& f, double x, double y, double t, double h = kOracleStep);
double laplacian(const SpaceTimeFunction& f, double x, double y, double t, double h = kOracleStep);
}  // namespace fd

struct VdForcing {
  Source density;    // rho_t + div(rho u)
  Source momentum;   // rho (u_t + u.grad u) + grad p - nu lap u
  Source charge;     // rho_e,t + div(rho_e u) - lap(rho_e)/Pe + J0 rho_e
  Source potential;  // -lap phi - rho_e

  bool all_verified() const;
  std::vector<OracleRecord> records() const;
  /// Throws std::logic_error if any source lacks a passing oracle record.
  VdSources sources() const;
};

struct TempForcing {
  Source flow;         // u_t + u.grad u + grad p - lap u + (T/M)^2 C q grad phi
  Source charge;       // q_t + div((-(T/M^2) grad phi + u) q) - alpha lap q
  Source gauss;        // lap(phi)/C + q
  Source temperature;  // theta_t + u.grad theta - lap(theta)/Pr

  bool all_verified() const;
  std::vector<OracleRecord> records() const;
  TempSources sources() const;
};

/// Builds and oracle-checks every variable-density source.
VdForcing vd_forcing(const VdExact& exact, const VdParameters& params, std::uint64_t seed);
/// Builds and oracle-checks every temperature-model source.
TempForcing temp_forcing(const TempExact& exact, const TempParameters& params, std::uint64_t seed);

}  // namespace ehd::mms
