#pragma once

namespace conekit {

// Full command-line entry point. Returns the process exit code:
// verdict-dependent codes per subcommand, 64 for usage/schema/validation
// problems, 70 for anything unexpected.
int run_cli(int argc, char** argv);

}  // namespace conekit
