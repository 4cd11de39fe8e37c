#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lunmeb::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kCertificateFailed = 2 };

/// Runs one command. `args` excludes the program name. Documents go to
/// `out` (or the --output file), diagnostics to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits "a,b,c" into reals; throws std::invalid_argument on junk.
std::vector<double> parse_reals(const std::string& text);

}  // namespace lunmeb::cli
