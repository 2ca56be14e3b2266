#pragma once

#include <string>
#include <vector>

#include "inscribe/cli/svg.hpp"
#include "inscribe/frame.hpp"

namespace inscribe::cli {

enum ExitCode { kOk = 0, kIoFailure = 1, kInputError = 2, kNumericalError = 3 };

/// Exit code for a module error: 2 for bad input, 3 for numerical failures.
int exit_code_for(ErrorCode code);

/// "a:b:n" -> n evenly spaced values from a to b inclusive.
std::vector<double> parse_wgrid(const std::string& spec);

/// what: config | solution | locus; plane: xy | uw | uv | ut | vt.
Scene build_scene(const CanonicalConfig& cfg, const Frame& frame, const std::string& what, const std::string& plane,
                  int samples = 256);

/// Entry point of the command-line tool; args excludes the program name.
int run_command(const std::vector<std::string>& args);

}  // namespace inscribe::cli
