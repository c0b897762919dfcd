#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coquasi::cli {

/// Exit codes: 0 success, 1 axiom failure (report emitted), 2 I/O or schema error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace coquasi::cli
