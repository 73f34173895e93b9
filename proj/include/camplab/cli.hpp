#pragma once

namespace camplab {

// Full command-line front end: parses argv (subcommand + flags, with an
// optional --config JSON file whose keys are injected as flags that explicit
// arguments override), runs the requested computation, writes the output
// table and its manifest. Returns 0 on success, 1 on usage/configuration
// errors, 2 on numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace camplab
