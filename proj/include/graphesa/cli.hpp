#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphesa::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on input errors and 2 for
/// Inconclusive verdicts under --strict.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphesa::cli
