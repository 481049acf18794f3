/*
 * cli.hh
 *
 * Command-line front end. Kept callable in-process so the test suite
 * can drive subcommands and inspect exit codes without spawning.
 *
 * Exit codes: 0 success, 2 specification unenforceable (or accuracy
 * plan infeasible), 3 certificate falsified, 4 invalid configuration.
 */

#pragma once

#include <string>
#include <vector>

namespace decsym {

inline constexpr int exit_ok = 0;
inline constexpr int exit_unenforceable = 2;
inline constexpr int exit_falsified = 3;
inline constexpr int exit_bad_config = 4;

int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args); // without program name

} // namespace decsym
