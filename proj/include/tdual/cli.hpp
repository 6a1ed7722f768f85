#pragma once

#include <string>
#include <vector>

namespace tdual {

/// Outcome of one CLI invocation: exit code, stdout payload, stderr
/// diagnostics.  Exit 0 = success, 1 = verification failure, 2 = usage or
/// validation error (stdout empty, message on stderr).
struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

/// Full command-line front end, in-process so tests can drive it directly.
/// `args` excludes the program name.  Identical args yield byte-identical
/// output; the env var TDUAL_SEED (default 12345) seeds the randomized
/// verification suite.
RunResult run(const std::vector<std::string>& args);

}  // namespace tdual
