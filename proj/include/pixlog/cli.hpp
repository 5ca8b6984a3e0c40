#pragma once

#include <string>
#include <vector>

namespace pixlog {

// Entry point behind the pixlog binary. Exit codes: 0 success, 1
// specification error (lexing, parsing, expansion), 2 runtime error.
int cliMain(const std::vector<std::string>& args);

}  // namespace pixlog
