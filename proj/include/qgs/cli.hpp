#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgs::cli {

enum ExitCode : int { kPass = 0, kVerdictFailure = 1, kUsage = 2, kResource = 3 };

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --output file), structured error records to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgs::cli
