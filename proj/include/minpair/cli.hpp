#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minpair {

/// Entry point of the `minpair` command. Returns 0 on success, the
/// category exit code of a minpair::Error otherwise (2 for command-line
/// usage errors, 1 for anything unexpected).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minpair
