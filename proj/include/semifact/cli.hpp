#ifndef SEMIFACT_CLI_HPP
#define SEMIFACT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace semifact {

// Runs one CLI invocation. Exit codes: 0 success, 2 input error,
// 3 infeasible descent or internal invariant failure.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semifact

#endif  // SEMIFACT_CLI_HPP
