#pragma once

#include "pixlog/ast.hpp"
#include "pixlog/lexer.hpp"

namespace pixlog {

// Parses a token sequence into a command list. Declaring the same top-level
// name twice within one file is an error. Throws SpecError with position.
Program parse(const std::vector<Token>& tokens);

// Convenience: tokenize + parse.
Program parseText(std::string_view text);

}  // namespace pixlog
