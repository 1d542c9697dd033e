#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msd {

/// Command-line entry point (args exclude the program name). Returns the
/// process exit code: 0 success/admissible, 1 I/O or schema error, 2
/// hypothesis violation or inadmissible input. Reports go to `out` as text,
/// or as machine-readable JSON when --json is passed (including error
/// reports).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace msd
