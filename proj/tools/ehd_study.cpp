// Command-line driver: runs a manufactured-solution convergence study and
// writes the error/order table as CSV or markdown.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <system_error>

#include <unistd.h>

#include "ehd/run_config.hpp"

namespace {

namespace fs = std::filesystem;

/// Writes via a sibling temporary and renames, so a failed write leaves nothing behind.
bool write_file(const std::string& path, const std::string& text, std::string& error) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      error = "cannot open " + path + " for writing";
      return false;
    }
    out << text;
    out.flush();
    if (!out) {
      error = "write to " + path + " failed";
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    error = "cannot write " + path + ": " + ec.message();
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ehd;
  cli::RunConfig cfg;
  try {
    cfg = cli::parse_args(argc, argv);
  } catch (const cli::HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for options\n";
    return 2;
  }
  if (cfg.verbose) cfg.study.log = &std::cerr;

  mms::ConvergenceReport report;
  try {
    report = mms::run_convergence(cfg.study);
  } catch (const mms::OracleMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string table =
      cfg.format == cli::Format::Csv ? mms::to_csv(report) : mms::to_markdown(report);
  if (cfg.out.empty()) {
    std::cout << table;
  } else {
    std::string error;
    if (!write_file(cfg.out, table, error)) {
      std::cerr << "error: " << error << '\n';
      return 1;
    }
  }

  // Summary goes to stderr when the table itself is on stdout.
  std::ostream& summary = cfg.out.empty() ? std::cerr : std::cout;
  for (const auto& rec : report.oracle) {
    char line[160];
    std::snprintf(line, sizeof(line), "oracle %s: max diff %.2e (tol %.0e, seed %llu) %s\n",
                  rec.equation.c_str(), rec.max_abs_diff, rec.tolerance,
                  static_cast<unsigned long long>(rec.seed), rec.passed ? "ok" : "FAILED");
    summary << line;
  }
  for (const auto& row : report.rows) {
    char line[512];
    if (row.ok) {
      std::snprintf(line, sizeof(line), "N=%d dt=%.4g steps=%d ok %.1fs", row.n, row.dt, row.steps,
                    row.seconds);
      summary << line;
      for (std::size_t k = 0; k < report.fields.size(); ++k) {
        std::snprintf(line, sizeof(line), " %s=%.3e", report.fields[k].c_str(), row.errors[k]);
        summary << line;
      }
      summary << '\n';
    } else {
      std::snprintf(line, sizeof(line), "N=%d dt=%.4g steps=%d FAILED %s\n", row.n, row.dt,
                    row.steps, row.failure.c_str());
      summary << line;
    }
  }
  if (!cfg.out.empty()) summary << "wrote " << cfg.out << '\n';
  return report.all_ok() ? 0 : 1;
}
