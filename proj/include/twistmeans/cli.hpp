#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistmeans::cli {

/// Exit codes: 0 all rows pass, 1 some residual out of tolerance, 2 usage or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace twistmeans::cli
