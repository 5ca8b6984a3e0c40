#include "pixlog/lexer.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

namespace pixlog {

namespace {

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool isIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool isDigit(char c) { return c >= '0' && c <= '9'; }

bool isKeyword(std::string_view s) {
  return s == "let" || s == "load" || s == "save" || s == "print" || s == "import";
}

// Longest match first.
constexpr std::array<std::string_view, 12> kOps = {">=.", "<=.", ">.", "<.", "=.", "!",
                                                   "&",   "|",   "+",  "-",  "*",  "/"};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (isIdentStart(c)) {
      size_t j = i;
      while (j < text.size() && isIdentChar(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      advance(j - i);
      out.push_back({isKeyword(word) ? Token::Kind::Keyword : Token::Kind::Ident,
                     std::move(word), 0, pos});
      continue;
    }
    if (isDigit(c)) {
      size_t j = i;
      while (j < text.size() && isDigit(text[j])) ++j;
      if (j < text.size() && text[j] == '.' && j + 1 < text.size() && isDigit(text[j + 1])) {
        ++j;
        while (j < text.size() && isDigit(text[j])) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && isDigit(text[k])) {
          ++k;
          while (k < text.size() && isDigit(text[k])) ++k;
          j = k;
        }
      }
      std::string lexeme(text.substr(i, j - i));
      advance(j - i);
      out.push_back({Token::Kind::Number, lexeme, std::strtod(lexeme.c_str(), nullptr), pos});
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw SpecError(SpecError::Stage::Lex, "unterminated string literal", pos);
      std::string content(text.substr(i + 1, j - i - 1));
      advance(j - i + 1);
      out.push_back({Token::Kind::String, std::move(content), 0, pos});
      continue;
    }
    if (c == '(' || c == ')' || c == ',') {
      advance(1);
      out.push_back({Token::Kind::Punct, std::string(1, c), 0, pos});
      continue;
    }
    bool matched = false;
    for (auto op : kOps) {
      if (text.substr(i, op.size()) == op) {
        advance(op.size());
        out.push_back({Token::Kind::Op, std::string(op), 0, pos});
        matched = true;
        break;
      }
    }
    if (matched) continue;
    // Bare '=' is punctuation (let/load); '=.': already matched above.
    if (c == '=') {
      advance(1);
      out.push_back({Token::Kind::Punct, "=", 0, pos});
      continue;
    }
    throw SpecError(SpecError::Stage::Lex,
                    std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back({Token::Kind::Eof, "", 0, {line, col}});
  return out;
}

}  // namespace pixlog
