#pragma once

#include "jetzcr/problem.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace jetzcr {

enum class ExitCode { Pass = 0, Fail = 1, InputError = 2 };

struct CliOptions
{
  bool json = false;
  bool timing = true;
  std::size_t depth_limit = kDefaultDepthLimit;
  std::optional<std::string> R; ///< the shift command's R
};

/// Runs one command and writes the report to `out`, diagnostics to `err`.
/// The report is emitted even on input errors, with status "error".
ExitCode run_command(const std::string &command, const std::string &problem_path,
                     const CliOptions &opts, std::ostream &out, std::ostream &err);

/// Builds the report without printing it.
Json build_report(const std::string &command, const Problem &problem, const CliOptions &opts);

/// Entry point for the jetzcr executable.
int cli_main(int argc, char **argv);

} // namespace jetzcr
