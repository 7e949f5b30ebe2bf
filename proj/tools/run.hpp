#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vortexsym::cli {

// Executes one command against the engine and writes the report to `out`
// (diagnostics go to `err`). Returns the process exit code:
//   0 all checks verified / command completed,
//   1 at least one refutation,
//   2 an inconclusive verdict is present,
//   3 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vortexsym::cli
