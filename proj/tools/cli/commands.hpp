#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "stark/impurity.hpp"

namespace stark::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitInconsistent = 3;

/// Text written to one output file.
struct OutputFile {
  std::string path;
  std::string content;
};

struct CommandResult {
  std::vector<OutputFile> files;
  int exit_code = kExitOk;
  std::string message;  // one-line summary for stderr
};

ModelParams make_params(const RunConfig& c);
ImpurityParams make_impurity(const RunConfig& c);

CommandResult cmd_spectrum(const RunConfig& c, const std::string& out);
CommandResult cmd_krein_scan(const RunConfig& c, const std::string& out);
CommandResult cmd_resonances(const RunConfig& c, const std::string& out);
CommandResult cmd_friedrichs_density(const RunConfig& c, const std::string& out);
CommandResult cmd_verify(const RunConfig& c, const std::string& out);

/// Parses arguments, runs the command, writes its files and maps errors to
/// exit codes. Messages go to stderr.
int run(int argc, char** argv);

}  // namespace stark::cli
