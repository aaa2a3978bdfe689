#ifndef PSM1D_TOOLS_COMMANDS_HPP
#define PSM1D_TOOLS_COMMANDS_HPP

#include <iosfwd>

#include "run_config.hpp"

namespace psm1d::cli {

/// Executes the configured command. Tabular data goes to the configured
/// output (stdout for "-"), diagnostics to `err`. Returns the process exit
/// code; input and runtime failures are reported by throwing.
int run_command(const run_config& config, std::ostream& out, std::ostream& err);

/// Output path resolution: "-" stays on stdout; relative paths are placed
/// under $PSM1D_OUTPUT_DIR when that is set.
std::string resolve_output_path(const std::string& output);

} // namespace psm1d::cli

#endif
