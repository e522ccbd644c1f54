#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grassgeo/numkernel.hpp"

namespace grassgeo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitBadInput = 3,
};

struct CheckResult {
  std::string name;
  int trials = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ReportMetadata {
  std::uint64_t seed = 0;
  std::size_t n_ambient = 0;
  std::size_t rank = 0;
  Field field = Field::real;
  std::string version;
};

struct Report {
  ReportMetadata metadata;
  std::vector<CheckResult> checks;  // sorted by name

  bool all_passed() const;
};

struct VerifyOptions {
  std::size_t n_ambient = 6;
  std::size_t rank = 2;
  Field field = Field::real;
  std::uint64_t seed = 0;
  int trials = 100;
  std::string suite = "all";
  std::optional<double> tolerance_override;
};

const std::vector<std::string>& verify_suites();

/// Runs the selected suites. Informational lines that are not checks (for
/// instance measured constants) are written to `info`. Throws
/// std::invalid_argument for option combinations that make no sense.
Report run_verify(const VerifyOptions& options, std::ostream& info);

/// `{"metadata": {...}, "checks": [...]}` with exactly the five check fields.
std::string report_to_json(const Report& report);

/// One human-readable line per check.
void print_report(std::ostream& out, const Report& report);

std::string version();

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grassgeo::cli
