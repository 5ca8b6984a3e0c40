#include "pixlog/parser.hpp"

#include <set>

namespace pixlog {

namespace {

constexpr int kMaxInfixLevel = 5;

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  Program run() {
    Program program;
    std::set<std::string> declared;
    while (peek().kind != Token::Kind::Eof) {
      const Token& t = peek();
      if (t.kind != Token::Kind::Keyword)
        throw err("expected a command (let, load, save, print, import), got '" + t.text + "'");
      if (t.text == "let") {
        LetDecl let = parseLet();
        if (!declared.insert(let.name).second)
          throw SpecError(SpecError::Stage::Parse, "duplicate declaration of '" + let.name + "'",
                          let.pos);
        program.emplace_back(std::move(let));
      } else if (t.text == "load") {
        LoadCmd load = parseLoad();
        if (!declared.insert(load.name).second)
          throw SpecError(SpecError::Stage::Parse, "duplicate declaration of '" + load.name + "'",
                          load.pos);
        program.emplace_back(std::move(load));
      } else if (t.text == "save") {
        SourcePos pos = next().pos;
        std::string path = expectString("save path");
        requireNonEmpty(path, "save path", pos);
        program.emplace_back(SaveCmd{std::move(path), parseExpr(), pos});
      } else if (t.text == "print") {
        SourcePos pos = next().pos;
        std::string label = expectString("print label");
        program.emplace_back(PrintCmd{std::move(label), parseExpr(), pos});
      } else {  // import
        SourcePos pos = next().pos;
        std::string path = expectString("import path");
        requireNonEmpty(path, "import path", pos);
        program.emplace_back(ImportCmd{std::move(path), pos});
      }
    }
    return program;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  SpecError err(const std::string& msg) const {
    return SpecError(SpecError::Stage::Parse, msg, peek().pos);
  }

  bool at(Token::Kind k, std::string_view text) const {
    return peek().kind == k && peek().text == text;
  }

  void expectPunct(std::string_view p) {
    if (!at(Token::Kind::Punct, p)) throw err("expected '" + std::string(p) + "'");
    next();
  }

  std::string expectIdent(const char* what) {
    if (peek().kind != Token::Kind::Ident)
      throw err(std::string("expected ") + what + ", got '" + peek().text + "'");
    return next().text;
  }

  std::string expectString(const char* what) {
    if (peek().kind != Token::Kind::String)
      throw err(std::string("expected a string for ") + what);
    return next().text;
  }

  void requireNonEmpty(const std::string& s, const char* what, SourcePos pos) {
    if (s.empty())
      throw SpecError(SpecError::Stage::Parse, std::string(what) + " must not be empty", pos);
  }

  LetDecl parseLet() {
    SourcePos pos = next().pos;  // let
    std::string name = expectIdent("a name after let");
    std::vector<std::string> params;
    if (at(Token::Kind::Punct, "(")) {
      next();
      std::set<std::string> seen;
      for (;;) {
        SourcePos ppos = peek().pos;
        std::string p = expectIdent("a parameter name");
        if (!seen.insert(p).second)
          throw SpecError(SpecError::Stage::Parse, "duplicate parameter '" + p + "'", ppos);
        params.push_back(std::move(p));
        if (at(Token::Kind::Punct, ",")) {
          next();
          continue;
        }
        expectPunct(")");
        break;
      }
    }
    expectPunct("=");
    ExprPtr body = parseExpr();
    return LetDecl{std::move(name), std::move(params), std::move(body), pos};
  }

  LoadCmd parseLoad() {
    SourcePos pos = next().pos;  // load
    std::string name = expectIdent("a name after load");
    expectPunct("=");
    std::string path = expectString("load path");
    requireNonEmpty(path, "load path", pos);
    return LoadCmd{std::move(name), std::move(path), pos};
  }

  ExprPtr parseExpr() { return parseInfix(1); }

  ExprPtr parseInfix(int level) {
    if (level > kMaxInfixLevel) return parseUnary();
    ExprPtr lhs = parseInfix(level + 1);
    while (peek().kind == Token::Kind::Op && infixPrecedence(peek().text) == level) {
      Token op = next();
      ExprPtr rhs = parseInfix(level + 1);
      lhs = makeExpr(InfixApply{op.text, std::move(lhs), std::move(rhs)}, op.pos);
    }
    return lhs;
  }

  ExprPtr parseUnary() {
    if (at(Token::Kind::Op, "!")) {
      Token op = next();
      return makeExpr(PrefixApply{"!", parseUnary()}, op.pos);
    }
    return parsePrimary();
  }

  ExprPtr parsePrimary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      return makeExpr(NumLit{t.number}, t.pos);
    }
    if (t.kind == Token::Kind::Ident) {
      Token name = next();
      if (at(Token::Kind::Punct, "(")) {
        next();
        std::vector<ExprPtr> args;
        args.push_back(parseExpr());
        while (at(Token::Kind::Punct, ",")) {
          next();
          args.push_back(parseExpr());
        }
        expectPunct(")");
        return makeExpr(Apply{name.text, std::move(args)}, name.pos);
      }
      return makeExpr(Ident{name.text}, name.pos);
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      next();
      ExprPtr inner = parseExpr();
      expectPunct(")");
      return makeExpr(Paren{std::move(inner)}, t.pos);
    }
    throw err("expected an expression, got '" + (t.kind == Token::Kind::Eof ? "end of file" : t.text) + "'");
  }

  const std::vector<Token>& toks_;
  size_t pos_ = 0;
};

}  // namespace

Program parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

Program parseText(std::string_view text) { return parse(tokenize(text)); }

}  // namespace pixlog
