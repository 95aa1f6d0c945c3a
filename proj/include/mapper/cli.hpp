#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mapper {

/// Exit codes: 0 success, 1 invalid input or usage, 2 verification failure.
int cli_main(int argc, char** argv);

/// Same as above with the program name omitted from `args`; output goes to
/// the given streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapper
