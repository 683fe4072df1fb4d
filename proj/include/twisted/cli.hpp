#pragma once

#include <iosfwd>

namespace twisted {

// exit codes
constexpr int exit_pass = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_cap = 3;

// Reports go to out, diagnostics and timings to err, so that identical
// arguments give byte-identical output.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}
