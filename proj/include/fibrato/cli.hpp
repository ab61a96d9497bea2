#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fibrato {

/// Runs one CLI invocation. Exit codes: 0 on success, 1 on validation
/// failure, 2 on usage or parse errors.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace fibrato
