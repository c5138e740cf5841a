#pragma once

#include "tdet/config.hpp"
#include "tdet/identities.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tdet {

/// Exit codes of `tdet verify`.
inline constexpr int kExitPass = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitStructural = 2;

struct RunOptions {
  std::optional<std::string> output;   ///< overrides config.output
  std::optional<std::uint64_t> seed;   ///< overrides symbol.seed for random families
  bool quiet = false;
};

struct RunResult {
  int exit_code = kExitPass;
  std::vector<CheckReport> reports;
  std::string output_path;
};

inline constexpr const char* kCsvHeader =
    "kind,lambda_re,lambda_im,n,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,band,section,error";

/// One CSV document (header + one row per report) with 17 significant digits per float.
std::string format_csv(const std::vector<CheckReport>& reports, std::size_t band);

/// Executes the configured checks, writes the CSV and prints one summary line per
/// row to `log` unless quiet.  Exit code: 0 if every row passes residual_tol, 1 if
/// any row fails or errors.  Throws only for structural problems (I/O).
RunResult run(const RunConfig& config, const RunOptions& options, std::ostream& log);

/// `verify <config-path> [--output p] [--seed s] [--quiet]`; returns the process exit code.
int run_cli(int argc, char** argv);

} // namespace tdet
