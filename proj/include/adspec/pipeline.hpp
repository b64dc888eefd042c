#pragma once

#include <string>
#include <vector>

#include "adspec/config.hpp"

namespace adspec {

/// Paths of the files a command wrote, in write order.
struct CommandResult {
  std::vector<std::string> files;
};

CommandResult cmd_generate(const RunConfig& config);
CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_stats(const RunConfig& config);
CommandResult cmd_entangle(const RunConfig& config);
CommandResult cmd_gaps(const RunConfig& config);
CommandResult cmd_flow(const RunConfig& config);

/// Validate, set the thread count, dispatch on config.command.
/// Throws ConfigError for bad configs and ComputeError for numerical failures.
CommandResult run_command(const RunConfig& config);

/// The '#' comment block at the top of every output file: version line plus
/// the full canonical config echo. Contains no timestamps so equal configs
/// produce equal bytes.
std::string output_header(const RunConfig& config);

/// Write text to path via a temp file in the same directory renamed into
/// place, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& text);

} // namespace adspec
