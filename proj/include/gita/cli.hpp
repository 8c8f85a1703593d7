// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands: generate, render, describe,
// sample-subgraph, build, split, stats, verify, eval.
//
// Options may also come from a JSON file given with --config; top-level keys
// name root options and one object per subcommand holds that subcommand's
// options, e.g. {"build": {"scale": 0.01, "seed": 3}}. Command-line flags
// override file values. Commands that write files also write
// resolved_config.json next to their outputs.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gita {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Runs the command line `args` (program name first) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gita
