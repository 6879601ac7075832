#pragma once

namespace radhf::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_not_converged = 1,
  exit_config_error = 2,
  exit_validation_failed = 3,
};

// Entry point of the radhf command line tool; returns the process exit code.
int run(int argc, char **argv);

} // namespace radhf::cli
