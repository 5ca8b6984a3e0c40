#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pixlog/errors.hpp"

namespace pixlog {

struct Token {
  enum class Kind { Keyword, Ident, Number, String, Op, Punct, Eof };
  Kind kind;
  std::string text;   // lexeme; for String the unquoted content
  double number = 0;  // valid for Kind::Number
  SourcePos pos;
};

// Splits specification text into tokens. `//` starts a comment to end of
// line. Throws SpecError (lexical) with position on any unexpected character.
std::vector<Token> tokenize(std::string_view text);

}  // namespace pixlog
