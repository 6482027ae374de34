#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ehd/convergence.hpp"

namespace ehd::cli {

enum class Format { Csv, Markdown };

struct RunConfig {
  mms::StudyConfig study;
  Format format = Format::Csv;
  std::string out;  // empty: write the table to stdout
  bool verbose = false;
};

/// Bad command line; `flag()` names the offending option.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string flag, const std::string& what)
      : std::runtime_error(flag.empty() ? what : flag + ": " + what), flag_(std::move(flag)) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

/// Thrown for --help; carries the usage text.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

/// "4,8,16" -> {4, 8, 16}. Throws UsageError on non-numeric entries or levels that do not double.
std::vector<int> parse_levels(const std::string& text);

RunConfig parse_args(int argc, const char* const* argv);
RunConfig parse_args(const std::vector<std::string>& args);  // args exclude the program name

}  // namespace ehd::cli
