#pragma once

namespace ietk {

/// Entry point of the command-line tool.  Parses a subcommand plus flags,
/// loads the scene, runs the experiment, writes the artifact, and returns
/// the process exit code: 0 on a decided run, 2 when a cap or budget left
/// the verdict partial (results are still written), 1 on input errors.
int cli_main(int argc, const char* const* argv);

}  // namespace ietk
