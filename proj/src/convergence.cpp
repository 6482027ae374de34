#include "ehd/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "ehd/quadrature.hpp"

namespace ehd::mms {

std::string model_name(Model model) { return model == Model::Vd ? "vd" : "temp"; }

Model parse_model(const std::string& name) {
  if (name == "vd") return Model::Vd;
  if (name == "temp") return Model::Temp;
  throw std::invalid_argument("unknown model '" + name + "' (expected vd or temp)");
}

const std::vector<std::string>& field_names(Model model) {
  static const std::vector<std::string> vd{"rho", "u", "p", "rho_e", "phi"};
  static const std::vector<std::string> temp{"u", "p", "q", "phi", "theta"};
  return model == Model::Vd ? vd : temp;
}

const std::vector<std::string>& parameter_keys(Model model) {
  static const std::vector<std::string> vd{"nu", "Pe", "J0"};
  static const std::vector<std::string> temp{"T", "M", "C", "alpha", "Pr"};
  return model == Model::Vd ? vd : temp;
}

void validate(const StudyConfig& config) {
  if (config.levels.empty()) throw std::invalid_argument("levels: at least one level is required");
  for (std::size_t i = 0; i < config.levels.size(); ++i) {
    if (config.levels[i] < 1) throw std::invalid_argument("levels: every N must be positive");
    if (i > 0 && config.levels[i] != 2 * config.levels[i - 1]) {
      throw std::invalid_argument("levels must double: " + std::to_string(config.levels[i - 1]) +
                                  " is followed by " + std::to_string(config.levels[i]));
    }
  }
  if (!(config.t_final > 0.0)) throw std::invalid_argument("t-final must be positive");
  if (!(config.dt_ratio > 0.0)) throw std::invalid_argument("dt-ratio must be positive");
  const auto& keys = parameter_keys(config.model);
  for (const auto& [key, value] : config.params) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw std::invalid_argument("unknown parameter '" + key + "' for model " +
                                  model_name(config.model));
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument("parameter '" + key + "' must be positive");
    }
  }
  for (int n : config.levels) {
    if (config.model == Model::Vd && time_grid(config, n).steps < 2) {
      throw std::invalid_argument("level N=" + std::to_string(n) +
                                  " gives fewer than two time steps; the vd scheme needs two");
    }
  }
}

namespace {

double param_or(const StudyConfig& config, const std::string& key, double fallback) {
  const auto it = config.params.find(key);
  return it == config.params.end() ? fallback : it->second;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

/// max_i |(div u, q_i)| / ||u||_inf, zero for a zero velocity.
double relative_divergence(const SparseMatrix& b, const DiscreteField& u) {
  double u_norm = 0.0;
  for (double v : u.values()) u_norm = std::max(u_norm, std::abs(v));
  if (u_norm == 0.0) return 0.0;
  return max_divergence_residual(b, u) / u_norm;
}

/// L2 error of a mean-zero discrete pressure against exact p minus its mean.
double pressure_error(const DiscreteField& p, const ScalarFunction& exact) {
  const std::vector<double> load = fem::assemble_load(
      p.space(), [&](const fem::QuadPoint& qp) { return exact(qp.x.x, qp.x.y); });
  double mean = 0.0;  // sum of (f, psi_i) = integral of f; |domain| = 1
  for (double v : load) mean += v;
  return fem::l2_error(p, [&](double x, double y) { return exact(x, y) - mean; });
}

void emit(std::ostream* log, int n, const Diagnostics& diagnostics) {
  if (!log) return;
  for (const auto& rec : diagnostics) *log << "N=" << n << ' ' << format_log_line(rec) << '\n';
}

VdSnapshot vd_snapshot(const VdExact& e, double t) {
  VdSnapshot s;
  s.rho = e.rho.at(t);
  s.u = e.u.at(t);
  s.p = e.p.at(t);
  s.rho_e = e.rho_e.at(t);
  s.phi = e.phi.at(t);
  return s;
}

template <class Body>
LevelRow run_level(const StudyConfig& config, int n, Body&& body) {
  LevelRow row;
  row.n = n;
  const TimeGrid grid = time_grid(config, n);
  row.dt = grid.dt;
  row.steps = grid.steps;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(row, grid);
    row.ok = true;
  } catch (const std::logic_error&) {
    throw;  // unverified forcing or misuse, not a level failure
  } catch (const std::exception& e) {
    row.ok = false;
    row.failure = e.what();
    row.errors.clear();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

VdParameters vd_parameters(const StudyConfig& config, double dt) {
  VdParameters p;
  p.nu = param_or(config, "nu", p.nu);
  p.peclet = param_or(config, "Pe", p.peclet);
  p.j0 = param_or(config, "J0", p.j0);
  p.dt = dt;
  p.t_final = config.t_final;
  return p;
}

TempParameters temp_parameters(const StudyConfig& config, double dt) {
  TempParameters p;
  p.t_ratio = param_or(config, "T", p.t_ratio);
  p.m = param_or(config, "M", p.m);
  p.c = param_or(config, "C", p.c);
  p.alpha = param_or(config, "alpha", p.alpha);
  p.prandtl = param_or(config, "Pr", p.prandtl);
  p.dt = dt;
  p.t_final = config.t_final;
  return p;
}

TimeGrid time_grid(const StudyConfig& config, int n) {
  TimeGrid g;
  g.steps = std::max(1, static_cast<int>(std::lround(n / config.dt_ratio)));
  g.dt = config.t_final / g.steps;
  return g;
}

bool ConvergenceReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const LevelRow& r) { return r.ok; });
}

std::optional<double> observed_order(double e_prev, double e_curr, int n_prev, int n_curr) {
  if (!(e_prev > 0.0) || !(e_curr > 0.0) || !std::isfinite(e_prev) || !std::isfinite(e_curr)) {
    return std::nullopt;
  }
  if (n_prev <= 0 || n_curr <= n_prev) return std::nullopt;
  return std::log(e_prev / e_curr) / std::log(static_cast<double>(n_curr) / n_prev);
}

LevelRow run_vd_level(const StudyConfig& config, const VdForcing& forcing, int n, std::ostream* log) {
  const VdSources sources = forcing.sources();  // throws if unverified
  return run_level(config, n, [&](LevelRow& row, const TimeGrid& grid) {
    if (grid.steps < 2) throw std::invalid_argument("the vd scheme needs at least two steps");
    const VdExact e = exact_vd();
    VdBoundary boundary;
    boundary.u = [u = e.u](double x, double y, double t) { return u(x, y, t); };
    boundary.rho_e = e.rho_e.value;
    boundary.phi = e.phi.value;
    if (config.density_boundary == DensityBoundary::Inflow) boundary.rho_inflow = e.rho.value;
    auto mesh = std::make_shared<const Mesh>(Mesh::unit_square(n));
    const VdScheme scheme(mesh, vd_parameters(config, grid.dt), sources, boundary);

    const double t0 = 0.0;
    VdState state = scheme.startup(vd_snapshot(e, t0), vd_snapshot(e, t0 + grid.dt), t0);
    while (state.step < grid.steps) {
      emit(log, n, scheme.advance(state));
      row.max_divergence = std::max(
          row.max_divergence, relative_divergence(scheme.divergence_matrix(), state.provisional->u));
    }
    const double t = grid.steps * grid.dt;
    const VdFields& f = state.current;
    row.errors = {fem::l2_error(f.rho, e.rho.at(t)), fem::l2_error(f.u, e.u.at(t)),
                  pressure_error(f.p, e.p.at(t)), fem::l2_error(f.rho_e, e.rho_e.at(t)),
                  fem::l2_error(f.phi, e.phi.at(t))};
  });
}

LevelRow run_temp_level(const StudyConfig& config, const TempForcing& forcing, int n,
                        std::ostream* log) {
  const TempSources sources = forcing.sources();
  return run_level(config, n, [&](LevelRow& row, const TimeGrid& grid) {
    const TempExact e = exact_temp();
    TempBoundary boundary;
    boundary.u = [u = e.u](double x, double y, double t) { return u(x, y, t); };
    boundary.q = e.q.value;
    boundary.phi = e.phi.value;
    boundary.theta = e.theta.value;
    auto mesh = std::make_shared<const Mesh>(Mesh::unit_square(n));
    const TempScheme scheme(mesh, temp_parameters(config, grid.dt), sources, boundary);

    TempSnapshot initial;
    initial.u = e.u.at(0.0);
    initial.p = e.p.at(0.0);
    initial.q = e.q.at(0.0);
    initial.phi = e.phi.at(0.0);
    initial.theta = e.theta.at(0.0);
    TempState state = scheme.startup(initial, 0.0);
    while (state.step < grid.steps) {
      emit(log, n, scheme.advance(state));
      row.max_divergence = std::max(
          row.max_divergence, relative_divergence(scheme.divergence_matrix(), state.current.u));
    }
    const double t = grid.steps * grid.dt;
    const TempFields& f = state.current;
    row.errors = {fem::l2_error(f.u, e.u.at(t)), pressure_error(f.p, e.p.at(t)),
                  fem::l2_error(f.q, e.q.at(t)), fem::l2_error(f.phi, e.phi.at(t)),
                  fem::l2_error(f.theta, e.theta.at(t))};
  });
}

ConvergenceReport run_convergence(const StudyConfig& config) {
  validate(config);
  ConvergenceReport report;
  report.model = config.model;
  report.fields = field_names(config.model);

  // Forcing is built and oracle-checked once, before any level runs.
  std::optional<VdForcing> vd;
  std::optional<TempForcing> temp;
  const TimeGrid first = time_grid(config, config.levels.front());
  if (config.model == Model::Vd) {
    vd = vd_forcing(exact_vd(), vd_parameters(config, first.dt), config.seed);
    report.oracle = vd->records();
  } else {
    temp = temp_forcing(exact_temp(), temp_parameters(config, first.dt), config.seed);
    report.oracle = temp->records();
  }

  auto run_one = [&](int n, std::ostream* log) {
    return config.model == Model::Vd ? run_vd_level(config, *vd, n, log)
                                     : run_temp_level(config, *temp, n, log);
  };

  const std::size_t levels = config.levels.size();
  std::vector<std::ostringstream> logs(levels);
  if (config.parallel && levels > 1) {
    std::vector<std::future<LevelRow>> futures;
    futures.reserve(levels);
    for (std::size_t i = 0; i < levels; ++i) {
      std::ostream* log = config.log ? &logs[i] : nullptr;
      futures.push_back(std::async(std::launch::async, run_one, config.levels[i], log));
    }
    for (auto& f : futures) report.rows.push_back(f.get());
    if (config.log) {
      for (auto& l : logs) *config.log << l.str();
    }
  } else {
    for (int n : config.levels) report.rows.push_back(run_one(n, config.log));
  }

  const std::size_t nf = report.fields.size();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    LevelRow& row = report.rows[i];
    row.orders.assign(nf, std::nullopt);
    if (i == 0 || !row.ok || !report.rows[i - 1].ok) continue;
    const LevelRow& prev = report.rows[i - 1];
    for (std::size_t k = 0; k < nf; ++k) {
      row.orders[k] = observed_order(prev.errors[k], row.errors[k], prev.n, row.n);
    }
  }

  auto& md = report.metadata;
  md.emplace_back("model", model_name(config.model));
  std::string levels_text;
  for (std::size_t i = 0; i < levels; ++i) {
    levels_text += (i ? "," : "") + std::to_string(config.levels[i]);
  }
  md.emplace_back("levels", levels_text);
  if (config.model == Model::Vd) {
    const VdParameters p = vd_parameters(config, first.dt);
    md.emplace_back("nu", fmt("%g", p.nu));
    md.emplace_back("Pe", fmt("%g", p.peclet));
    md.emplace_back("J0", fmt("%g", p.j0));
    md.emplace_back("density_bc", config.density_boundary == DensityBoundary::Inflow ? "inflow" : "none");
  } else {
    const TempParameters p = temp_parameters(config, first.dt);
    md.emplace_back("T", fmt("%g", p.t_ratio));
    md.emplace_back("M", fmt("%g", p.m));
    md.emplace_back("C", fmt("%g", p.c));
    md.emplace_back("alpha", fmt("%g", p.alpha));
    md.emplace_back("Pr", fmt("%g", p.prandtl));
  }
  md.emplace_back("t_final", fmt("%g", config.t_final));
  md.emplace_back("dt_rule", "steps = round(N / " + fmt("%g", config.dt_ratio) + "), dt = t_final / steps");
  md.emplace_back("error_norm", "L2 at t_final");
  md.emplace_back("quadrature_degree", std::to_string(kDefaultQuadratureDegree));
  md.emplace_back("oracle_seed", std::to_string(config.seed));
  return report;
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out = "N";
  for (const auto& f : report.fields) out += ",err_" + f;
  for (const auto& f : report.fields) out += ",order_" + f;
  out += "\r\n";
  const std::size_t nf = report.fields.size();
  for (const LevelRow& row : report.rows) {
    out += std::to_string(row.n);
    for (std::size_t k = 0; k < nf; ++k) {
      out += ',';
      if (row.ok && k < row.errors.size()) out += fmt("%.3e", row.errors[k]);
    }
    for (std::size_t k = 0; k < nf; ++k) {
      out += ',';
      if (k < row.orders.size() && row.orders[k]) out += fmt("%.4f", *row.orders[k]);
    }
    out += "\r\n";
  }
  return out;
}

namespace {

std::string display_name(const std::string& field) {
  if (field == "rho") return "ρ";
  if (field == "rho_e") return "ρ_e";
  if (field == "phi") return "φ";
  if (field == "theta") return "θ";
  return field;
}

}  // namespace

std::string to_markdown(const ConvergenceReport& report) {
  std::string out;
  for (const auto& [key, value] : report.metadata) out += "- " + key + ": " + value + "\n";
  out += "\n| N |";
  for (const auto& f : report.fields) out += " ‖e_" + display_name(f) + "‖₀ | Order |";
  out += "\n|---|";
  for (std::size_t k = 0; k < report.fields.size(); ++k) out += "---|---|";
  out += "\n";
  for (const LevelRow& row : report.rows) {
    out += "| " + std::to_string(row.n) + " |";
    for (std::size_t k = 0; k < report.fields.size(); ++k) {
      const std::string err = row.ok ? fmt("%.3e", row.errors[k]) : "failed";
      const std::string ord =
          (k < row.orders.size() && row.orders[k]) ? fmt("%.4f", *row.orders[k]) : "";
      out += " " + err + " | " + ord + " |";
    }
    out += "\n";
  }
  for (const LevelRow& row : report.rows) {
    if (!row.ok) out += "\nN=" + std::to_string(row.n) + " failed: " + row.failure + "\n";
  }
  return out;
}

}  // namespace ehd::mms
