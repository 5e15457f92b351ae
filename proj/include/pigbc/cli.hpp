#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end. All computation routes through the library; the CLI
// only parses flags and serializes results (CSV or JSON).
//
// Exit codes: 0 success, 1 usage error, 2 domain error.

namespace pigbc {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pigbc
