#pragma once

#include <iosfwd>

namespace probcf::cli {

/// Entry point of the `probcf` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace probcf::cli
