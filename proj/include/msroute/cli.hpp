#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msroute {

// Subcommands: route, gen, sweep, dump-graph. Returns 0 on success (unrouted nets
// included), 1 for bad input, 2 for a broken internal invariant.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

} // namespace msroute
