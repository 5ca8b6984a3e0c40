#include "pixlog/ast.hpp"

#include <charconv>

namespace pixlog {

ExprPtr makeExpr(std::variant<NumLit, Ident, Apply, InfixApply, PrefixApply, Paren> node,
                 SourcePos pos) {
  return std::make_shared<const Expr>(Expr{std::move(node), pos});
}

int infixPrecedence(const std::string& op) {
  if (op == "|") return 1;
  if (op == "&") return 2;
  if (op == ">." || op == ">=." || op == "<." || op == "<=." || op == "=.") return 3;
  if (op == "+" || op == "-") return 4;
  if (op == "*" || op == "/") return 5;
  return -1;
}

namespace {

constexpr int kPrefixLevel = 6;
constexpr int kAtomLevel = 7;

std::string numText(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int exprLevel(const ExprPtr& e) {
  if (std::holds_alternative<InfixApply>(e->node))
    return infixPrecedence(std::get<InfixApply>(e->node).op);
  if (std::holds_alternative<PrefixApply>(e->node)) return kPrefixLevel;
  return kAtomLevel;
}

void print(const ExprPtr& e, int minLevel, std::string& out) {
  int level = exprLevel(e);
  bool wrap = level < minLevel;
  if (wrap) out += '(';
  std::visit(
      [&](auto&& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumLit>) {
          out += numText(n.value);
        } else if constexpr (std::is_same_v<T, Ident>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Apply>) {
          out += n.fn;
          out += '(';
          for (size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ',';
            print(n.args[i], 0, out);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, InfixApply>) {
          print(n.lhs, level, out);
          out += ' ';
          out += n.op;
          out += ' ';
          print(n.rhs, level + 1, out);  // left-associative
        } else if constexpr (std::is_same_v<T, PrefixApply>) {
          out += n.op;
          print(n.arg, kPrefixLevel, out);
        } else if constexpr (std::is_same_v<T, Paren>) {
          out += '(';
          print(n.inner, 0, out);
          out += ')';
        }
      },
      e->node);
  if (wrap) out += ')';
}

}  // namespace

std::string toText(const ExprPtr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

std::string toText(const Command& c) {
  return std::visit(
      [](auto&& cmd) -> std::string {
        using T = std::decay_t<decltype(cmd)>;
        if constexpr (std::is_same_v<T, LetDecl>) {
          std::string out = "let " + cmd.name;
          if (!cmd.params.empty()) {
            out += '(';
            for (size_t i = 0; i < cmd.params.size(); ++i) {
              if (i) out += ',';
              out += cmd.params[i];
            }
            out += ')';
          }
          return out + " = " + toText(cmd.body);
        } else if constexpr (std::is_same_v<T, LoadCmd>) {
          return "load " + cmd.name + " = \"" + cmd.path + "\"";
        } else if constexpr (std::is_same_v<T, SaveCmd>) {
          return "save \"" + cmd.path + "\" " + toText(cmd.expr);
        } else if constexpr (std::is_same_v<T, PrintCmd>) {
          return "print \"" + cmd.label + "\" " + toText(cmd.expr);
        } else {
          return "import \"" + cmd.path + "\"";
        }
      },
      c);
}

std::string toText(const Program& p) {
  std::string out;
  for (const auto& c : p) {
    out += toText(c);
    out += '\n';
  }
  return out;
}

namespace {
ExprPtr stripParens(const ExprPtr& e) {
  if (std::holds_alternative<Paren>(e->node)) return stripParens(std::get<Paren>(e->node).inner);
  return e;
}
}  // namespace

bool sameExpr(const ExprPtr& a0, const ExprPtr& b0) {
  ExprPtr a = stripParens(a0), b = stripParens(b0);
  if (a->node.index() != b->node.index()) return false;
  if (const auto* n = std::get_if<NumLit>(&a->node))
    return n->value == std::get<NumLit>(b->node).value;
  if (const auto* n = std::get_if<Ident>(&a->node)) return n->name == std::get<Ident>(b->node).name;
  if (const auto* n = std::get_if<Apply>(&a->node)) {
    const auto& m = std::get<Apply>(b->node);
    if (n->fn != m.fn || n->args.size() != m.args.size()) return false;
    for (size_t i = 0; i < n->args.size(); ++i)
      if (!sameExpr(n->args[i], m.args[i])) return false;
    return true;
  }
  if (const auto* n = std::get_if<InfixApply>(&a->node)) {
    const auto& m = std::get<InfixApply>(b->node);
    return n->op == m.op && sameExpr(n->lhs, m.lhs) && sameExpr(n->rhs, m.rhs);
  }
  const auto& n = std::get<PrefixApply>(a->node);
  const auto& m = std::get<PrefixApply>(b->node);
  return n.op == m.op && sameExpr(n.arg, m.arg);
}

size_t exprSize(const ExprPtr& e) {
  return std::visit(
      [](auto&& n) -> size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Apply>) {
          size_t s = 1;
          for (const auto& a : n.args) s += exprSize(a);
          return s;
        } else if constexpr (std::is_same_v<T, InfixApply>) {
          return 1 + exprSize(n.lhs) + exprSize(n.rhs);
        } else if constexpr (std::is_same_v<T, PrefixApply>) {
          return 1 + exprSize(n.arg);
        } else if constexpr (std::is_same_v<T, Paren>) {
          return exprSize(n.inner);
        } else {
          return 1;
        }
      },
      e->node);
}

}  // namespace pixlog
