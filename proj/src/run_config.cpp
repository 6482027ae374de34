#include "ehd/run_config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace ehd::cli {

namespace {

double parse_positive(const std::string& flag, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError(flag, "'" + text + "' is not a number");
  }
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(flag, "value must be positive, got " + text);
  return v;
}

}  // namespace

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    int n = 0;
    const char* end = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(item.data(), end, n);
    if (item.empty() || ec != std::errc() || ptr != end) {
      throw UsageError("--levels", "'" + item + "' is not an integer");
    }
    if (n < 1) throw UsageError("--levels", "levels must be positive");
    if (!levels.empty() && n != 2 * levels.back()) {
      throw UsageError("--levels", "levels must double (" + std::to_string(levels.back()) +
                                       " is followed by " + std::to_string(n) + ")");
    }
    levels.push_back(n);
  }
  if (levels.empty()) throw UsageError("--levels", "at least one level is required");
  return levels;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Manufactured-solution convergence study for the EHD schemes", "ehd_study"};
  std::string model = "vd";
  std::string levels = "4,8,16,32";
  std::string t_final = "1";
  std::string dt_ratio = "1";
  std::vector<std::string> params;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = mms::kDefaultSeed;
  bool verbose = false;
  bool serial = false;
  std::string density_bc = "inflow";

  app.add_option("--model", model, "vd or temp")->capture_default_str();
  app.add_option("--levels", levels, "comma-separated N, each double the previous")
      ->capture_default_str();
  app.add_option("--t-final", t_final, "final time")->capture_default_str();
  app.add_option("--dt-ratio", dt_ratio, "steps per level = round(N / dt-ratio)")->capture_default_str();
  app.add_option("--param", params, "key=value override (repeatable)")->take_all();
  app.add_option("--format", format, "csv or md")->capture_default_str();
  app.add_option("--out", out, "output file (default: stdout)");
  app.add_option("--seed", seed, "seed for the forcing oracle points")->capture_default_str();
  app.add_option("--density-bc", density_bc, "vd density boundary: inflow or none")
      ->capture_default_str();
  app.add_flag("--verbose,-v", verbose, "print one line per linear solve to stderr");
  app.add_flag("--serial", serial, "run levels one after another");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError("", e.what());
  }

  RunConfig cfg;
  try {
    cfg.study.model = mms::parse_model(model);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--model", e.what());
  }
  cfg.study.levels = parse_levels(levels);
  cfg.study.t_final = parse_positive("--t-final", t_final);
  cfg.study.dt_ratio = parse_positive("--dt-ratio", dt_ratio);
  cfg.study.seed = seed;
  cfg.study.parallel = !serial;

  const auto& keys = mms::parameter_keys(cfg.study.model);
  for (const std::string& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param", "expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      std::string known;
      for (const auto& k : keys) known += (known.empty() ? "" : ", ") + k;
      throw UsageError("--param", "unknown key '" + key + "' for model " + model + " (known: " + known + ")");
    }
    cfg.study.params[key] = parse_positive("--param " + key, kv.substr(eq + 1));
  }

  if (format == "csv") {
    cfg.format = Format::Csv;
  } else if (format == "md") {
    cfg.format = Format::Markdown;
  } else {
    throw UsageError("--format", "expected csv or md, got '" + format + "'");
  }
  if (density_bc == "inflow") {
    cfg.study.density_boundary = mms::DensityBoundary::Inflow;
  } else if (density_bc == "none") {
    cfg.study.density_boundary = mms::DensityBoundary::None;
  } else {
    throw UsageError("--density-bc", "expected inflow or none, got '" + density_bc + "'");
  }
  cfg.out = out;
  cfg.verbose = verbose;

  try {
    mms::validate(cfg.study);
  } catch (const std::invalid_argument& e) {
    throw UsageError("", e.what());
  }
  return cfg;
}

RunConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_args(args);
}

}  // namespace ehd::cli
