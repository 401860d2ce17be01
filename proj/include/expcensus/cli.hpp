#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expcensus {

/// Expands "A:B:STEP" into A, A + STEP, ... up to B. Throws Parse on
/// malformed input, a nonpositive step or B < A.
std::vector<double> parse_grid(const std::string& text);

/// Command-line entry point. Exit codes: 0 success, 1 computational failure
/// (error name on `err`), 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace expcensus
