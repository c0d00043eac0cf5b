#pragma once

namespace mathieu {

// Command-line entry point (subcommands: exponents, hill, wkb, periodic,
// sweep). Returns 0 on success, 1 on computation error, 2 on usage or
// parameter-validation error.
int run_cli(int argc, const char* const* argv);

} // namespace mathieu
