#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pgf::cli {

/// Exit codes: 0 all declared checks pass, 1 a check failed or the run
/// aborted, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgf::cli
