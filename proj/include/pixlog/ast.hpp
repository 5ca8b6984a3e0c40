#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pixlog/errors.hpp"

namespace pixlog {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumLit {
  double value;
};
struct Ident {
  std::string name;
};
struct Apply {
  std::string fn;
  std::vector<ExprPtr> args;  // at least one
};
struct InfixApply {
  std::string op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct PrefixApply {
  std::string op;
  ExprPtr arg;
};
struct Paren {
  ExprPtr inner;
};

struct Expr {
  std::variant<NumLit, Ident, Apply, InfixApply, PrefixApply, Paren> node;
  SourcePos pos;
};

ExprPtr makeExpr(std::variant<NumLit, Ident, Apply, InfixApply, PrefixApply, Paren> node,
                 SourcePos pos = {});

struct LetDecl {
  std::string name;
  std::vector<std::string> params;  // pairwise distinct; empty for constants
  ExprPtr body;
  SourcePos pos;
};
struct LoadCmd {
  std::string name;
  std::string path;  // non-empty
  SourcePos pos;
};
struct SaveCmd {
  std::string path;
  ExprPtr expr;
  SourcePos pos;
};
struct PrintCmd {
  std::string label;
  ExprPtr expr;
  SourcePos pos;
};
struct ImportCmd {
  std::string path;
  SourcePos pos;
};

using Command = std::variant<LetDecl, LoadCmd, SaveCmd, PrintCmd, ImportCmd>;
using Program = std::vector<Command>;

// Infix binding strength; higher binds tighter. Prefix '!' and function
// application bind tightest, all infix operators are left-associative.
int infixPrecedence(const std::string& op);

// Canonical text form. Parens are emitted for Paren nodes and wherever a
// child binds looser than its context, so the output reparses to the same
// tree (up to Paren nodes).
std::string toText(const ExprPtr& e);
std::string toText(const Command& c);
std::string toText(const Program& p);

// Structural equality ignoring Paren wrappers and positions.
bool sameExpr(const ExprPtr& a, const ExprPtr& b);

// Total syntax nodes (Paren wrappers not counted).
size_t exprSize(const ExprPtr& e);

}  // namespace pixlog
