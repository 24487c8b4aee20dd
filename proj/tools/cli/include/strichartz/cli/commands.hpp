#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "strichartz/cli/run_config.hpp"

namespace strichartz::cli {

/// Exit codes: every check passed, some check failed, bad usage or configuration.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int cmd_eig(const RunConfig& config, std::ostream& out);
int cmd_verify_potential(const RunConfig& config, std::ostream& out);
int cmd_residual(const RunConfig& config, std::ostream& out);
int cmd_norms(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
/// Recomputes fits, verdict and plot files from `<out>/sweep.csv`.
int cmd_report(const RunConfig& config, std::ostream& out);

/// Full command line (without the program name); returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strichartz::cli
