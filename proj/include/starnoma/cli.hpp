// SPDX-License-Identifier: Apache-2.0

#ifndef STARNOMA_CLI_HPP
#define STARNOMA_CLI_HPP

#include <iosfwd>

namespace starnoma {

/// Subcommands: solve, convergence, sweep-users, sweep-distance, oracle-check.
/// Returns the process exit code.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace starnoma

#endif  // STARNOMA_CLI_HPP
