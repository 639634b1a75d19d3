// commands.hpp — Subcommands of the spinent tool and the argument-parsing entry point

#pragma once

#include <iosfwd>
#include <string>

#include "spinent/cli/config.hpp"
#include "spinent/cli/report.hpp"

namespace spinent::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitDegenerate = 4,
};

// Per-point failures are reported in an error column and raise the exit code;
// hard failures throw.
struct CommandResult {
    Report report;
    int exit_code{kExitOk};
};

CommandResult cmd_evolve(const RunConfig& cfg);
CommandResult cmd_steady(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg, int threads);
CommandResult cmd_border(const RunConfig& cfg, int threads);
CommandResult cmd_optimum(const RunConfig& cfg, int threads);
CommandResult cmd_events(const RunConfig& cfg);
CommandResult cmd_oracle_check(const RunConfig& cfg);

CommandResult run_command(const std::string& name, const RunConfig& cfg, int threads = 1);

// Maps an in-flight exception to an exit code.
int exit_code_for(const std::exception& e);

// Full command line: spinent <command> [--config P] [--output P] [--format csv|json]
// [--threads N] [--tolerance key=value ...]. Reports go to `out` unless an output path is set.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace spinent::cli
