#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qf::cli {

/// Runs one `qf` invocation; args exclude the program name. Returns the exit
/// code. Artifacts go to files named by --out (stdout when absent), summaries
/// and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rough single-core time for the interpolation of degree d, in seconds.
double estimated_seconds(int degree);

}  // namespace qf::cli
