#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mnat::cli {

/// Dispatches one CLI invocation (without the program name).
/// Exit codes: 0 = success, 1 = usage or input error, 2 = verification
/// failure (a witness or audit violation was found).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mnat::cli
