#pragma once

namespace fourman {

// Full command-line front end; returns the process exit code
// (0 computed, 1 validation failure, 2 unknown/exhausted, 64 usage).
int run_cli(int argc, const char* const* argv);

}  // namespace fourman
