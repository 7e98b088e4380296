#pragma once

namespace steindpp {

// Subcommand dispatch for the command-line front end. Returns the process
// exit code: 0 success, 1 domain error (invalid kernel, infeasible config,
// failed self-test), 2 usage error.
int dispatch(int argc, const char* const* argv);

}  // namespace steindpp
