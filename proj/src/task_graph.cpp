#include "pixlog/task_graph.hpp"

#include <cassert>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "pixlog/parser.hpp"

namespace pixlog {

namespace fs = std::filesystem;

std::string payloadText(const Payload& p) {
  if (std::holds_alternative<std::monostate>(p)) return "-";
  if (const double* d = std::get_if<double>(&p)) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), *d);
    return std::string(buf, res.ptr);
  }
  return "\"" + std::get<std::string>(p) + "\"";
}

NodeId TaskGraph::intern(Task t) {
  std::string key = t.opcode;
  key += '\x1f';
  if (const double* d = std::get_if<double>(&t.payload)) {
    // Bit pattern, so consing keys are exact.
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(*d));
    std::memcpy(&bits, d, sizeof(bits));
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    key += 'd';
    key += buf;
  } else if (const std::string* s = std::get_if<std::string>(&t.payload)) {
    key += 's';
    key += *s;
  }
  key += '\x1f';
  for (NodeId d : t.deps) {
    key += std::to_string(d);
    key += ',';
  }
  auto it = interned_.find(key);
  if (it != interned_.end()) return it->second;
  NodeId id = NodeId(nodes_.size());
  for ([[maybe_unused]] NodeId d : t.deps) assert(d < id);
  nodes_.push_back(std::move(t));
  interned_.emplace(std::move(key), id);
  return id;
}

void TaskGraph::addOutput(NodeId id) {
  for (NodeId o : outputs_)
    if (o == id) return;
  outputs_.push_back(id);
}

std::vector<NodeId> TaskGraph::toposort() const {
  // Dependencies have smaller ids by construction, so ascending id order is
  // the stable topological order.
  std::vector<NodeId> order(nodes_.size());
  for (NodeId i = 0; i < nodes_.size(); ++i) order[i] = i;
  return order;
}

std::string TaskGraph::dump() const {
  std::string out;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const Task& t = nodes_[id];
    out += std::to_string(id);
    out += ' ';
    out += t.opcode;
    out += ' ';
    out += payloadText(t.payload);
    out += ' ';
    if (t.deps.empty()) {
      out += '-';
    } else {
      for (size_t i = 0; i < t.deps.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(t.deps[i]);
      }
    }
    out += '\n';
  }
  return out;
}

size_t TaskGraph::countOpcode(const std::string& opcode) const {
  size_t n = 0;
  for (const Task& t : nodes_)
    if (t.opcode == opcode) ++n;
  return n;
}

std::string FileImportResolver::resolve(const std::string& path) const {
  fs::path p(path);
  if (p.is_absolute()) return p.string();
  fs::path rel = fs::path(baseDir_) / p;
  if (fs::exists(rel)) return rel.string();
  return p.string();  // fall back to the working directory
}

std::string FileImportResolver::canonicalKey(const std::string& path) {
  std::error_code ec;
  fs::path resolved = fs::weakly_canonical(resolve(path), ec);
  return ec ? resolve(path) : resolved.string();
}

Program FileImportResolver::load(const std::string& path) {
  std::string full = resolve(path);
  std::ifstream in(full, std::ios::binary);
  if (!in) throw SpecError(SpecError::Stage::Expand, "cannot open import file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseText(ss.str());
}

namespace {

struct Builtin {
  int arity;
};

const std::unordered_map<std::string, Builtin>& builtins() {
  static const std::unordered_map<std::string, Builtin> table = {
      {"near", {1}},      {"reach", {2}}, {"intensity", {1}}, {"volume", {1}},
      {"!", {1}},         {"&", {2}},     {"|", {2}},         {"+", {2}},
      {"-", {2}},         {"*", {2}},     {"/", {2}},         {">.", {2}},
      {">=.", {2}},       {"<.", {2}},    {"<=.", {2}},       {"=.", {2}},
  };
  return table;
}

class Expander {
 public:
  explicit Expander(ImportResolver* imports) : imports_(imports) {}

  TaskGraph take() { return std::move(graph_); }

  void processProgram(const Program& program) {
    for (const Command& cmd : program) processCommand(cmd);
  }

 private:
  struct MacroDef {
    std::vector<std::string> params;
    ExprPtr body;
  };
  struct LoadDef {
    std::string path;
  };
  using Global = std::variant<MacroDef, LoadDef>;
  using ParamEnv = std::unordered_map<std::string, NodeId>;

  void processCommand(const Command& cmd) {
    std::visit([this](auto&& c) { handle(c); }, cmd);
  }

  void declare(const std::string& name, SourcePos pos, Global g) {
    if (builtins().count(name))
      throw SpecError(SpecError::Stage::Expand, "'" + name + "' redefines a built-in", pos);
    if (!globals_.emplace(name, std::move(g)).second)
      throw SpecError(SpecError::Stage::Expand,
                      "duplicate top-level name '" + name + "' across files", pos);
  }

  void handle(const LetDecl& let) {
    checkBody(let);
    declare(let.name, let.pos, MacroDef{let.params, let.body});
  }

  void handle(const LoadCmd& load) { declare(load.name, load.pos, LoadDef{load.path}); }

  void handle(const SaveCmd& save) {
    NodeId dep = expandExpr(save.expr, nullptr);
    graph_.addOutput(graph_.intern({"save", save.path, {dep}}));
  }

  void handle(const PrintCmd& print) {
    NodeId dep = expandExpr(print.expr, nullptr);
    graph_.addOutput(graph_.intern({"print", print.label, {dep}}));
  }

  void handle(const ImportCmd& import) {
    if (!imports_)
      throw SpecError(SpecError::Stage::Expand, "import is not available here", import.pos);
    std::string key = imports_->canonicalKey(import.path);
    if (!imported_.insert(key).second) return;  // each file imported at most once
    processProgram(imports_->load(import.path));
  }

  // Static check of a macro body at declaration time: every identifier must
  // resolve and arities must match. Catches self-reference (lets are
  // non-recursive) before any use.
  void checkBody(const LetDecl& let) {
    std::set<std::string> params(let.params.begin(), let.params.end());
    checkExpr(let.body, let.name, params);
  }

  void checkExpr(const ExprPtr& e, const std::string& self, const std::set<std::string>& params) {
    std::visit(
        [&](auto&& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Ident>) {
            if (params.count(n.name)) return;
            if (n.name == self)
              throw SpecError(SpecError::Stage::Expand,
                              "'" + n.name + "' used inside its own definition (lets are "
                              "non-recursive)",
                              e->pos);
            auto it = globals_.find(n.name);
            if (it == globals_.end())
              throw SpecError(SpecError::Stage::Expand, "unbound identifier '" + n.name + "'",
                              e->pos);
            if (const auto* m = std::get_if<MacroDef>(&it->second); m && !m->params.empty())
              throw SpecError(SpecError::Stage::Expand,
                              "'" + n.name + "' takes " + std::to_string(m->params.size()) +
                                  " argument(s) but is used without any",
                              e->pos);
          } else if constexpr (std::is_same_v<T, Apply>) {
            checkCallTarget(n.fn, n.args.size(), self, params, e->pos);
            for (const auto& a : n.args) checkExpr(a, self, params);
          } else if constexpr (std::is_same_v<T, InfixApply>) {
            checkExpr(n.lhs, self, params);
            checkExpr(n.rhs, self, params);
          } else if constexpr (std::is_same_v<T, PrefixApply>) {
            checkExpr(n.arg, self, params);
          } else if constexpr (std::is_same_v<T, Paren>) {
            checkExpr(n.inner, self, params);
          }
        },
        e->node);
  }

  void checkCallTarget(const std::string& fn, size_t argc, const std::string& self,
                       const std::set<std::string>& params, SourcePos pos) {
    if (params.count(fn))
      throw SpecError(SpecError::Stage::Expand,
                      "parameter '" + fn + "' cannot be applied as a function", pos);
    if (fn == self)
      throw SpecError(SpecError::Stage::Expand,
                      "'" + fn + "' used inside its own definition (lets are non-recursive)",
                      pos);
    if (auto bit = builtins().find(fn); bit != builtins().end()) {
      if (size_t(bit->second.arity) != argc)
        throw SpecError(SpecError::Stage::Expand,
                        "'" + fn + "' expects " + std::to_string(bit->second.arity) +
                            " argument(s), got " + std::to_string(argc),
                        pos);
      return;
    }
    auto it = globals_.find(fn);
    if (it == globals_.end())
      throw SpecError(SpecError::Stage::Expand, "unbound identifier '" + fn + "'", pos);
    if (const auto* m = std::get_if<MacroDef>(&it->second)) {
      if (m->params.size() != argc)
        throw SpecError(SpecError::Stage::Expand,
                        "'" + fn + "' expects " + std::to_string(m->params.size()) +
                            " argument(s), got " + std::to_string(argc),
                        pos);
      return;
    }
    throw SpecError(SpecError::Stage::Expand, "'" + fn + "' is an image, not a function", pos);
  }

  NodeId expandExpr(const ExprPtr& e, const ParamEnv* params) {
    return std::visit(
        [&](auto&& n) -> NodeId {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, NumLit>) {
            return graph_.intern({"const", n.value, {}});
          } else if constexpr (std::is_same_v<T, Ident>) {
            return expandIdent(n.name, e->pos, params);
          } else if constexpr (std::is_same_v<T, Apply>) {
            return expandCall(n.fn, n.args, e->pos, params);
          } else if constexpr (std::is_same_v<T, InfixApply>) {
            NodeId l = expandExpr(n.lhs, params);
            NodeId r = expandExpr(n.rhs, params);
            return graph_.intern({n.op, std::monostate{}, {l, r}});
          } else if constexpr (std::is_same_v<T, PrefixApply>) {
            return graph_.intern({n.op, std::monostate{}, {expandExpr(n.arg, params)}});
          } else {  // Paren
            return expandExpr(n.inner, params);
          }
        },
        e->node);
  }

  NodeId expandIdent(const std::string& name, SourcePos pos, const ParamEnv* params) {
    if (params) {
      auto it = params->find(name);
      if (it != params->end()) return it->second;
    }
    auto it = globals_.find(name);
    if (it == globals_.end())
      throw SpecError(SpecError::Stage::Expand, "unbound identifier '" + name + "'", pos);
    if (const auto* load = std::get_if<LoadDef>(&it->second))
      return graph_.intern({"load", load->path, {}});
    const auto& m = std::get<MacroDef>(it->second);
    if (!m.params.empty())
      throw SpecError(SpecError::Stage::Expand,
                      "'" + name + "' takes " + std::to_string(m.params.size()) +
                          " argument(s) but is used without any",
                      pos);
    return expandExpr(m.body, nullptr);
  }

  NodeId expandCall(const std::string& fn, const std::vector<ExprPtr>& args, SourcePos pos,
                    const ParamEnv* params) {
    if (params && params->count(fn))
      throw SpecError(SpecError::Stage::Expand,
                      "parameter '" + fn + "' cannot be applied as a function", pos);
    if (auto bit = builtins().find(fn); bit != builtins().end()) {
      if (size_t(bit->second.arity) != args.size())
        throw SpecError(SpecError::Stage::Expand,
                        "'" + fn + "' expects " + std::to_string(bit->second.arity) +
                            " argument(s), got " + std::to_string(args.size()),
                        pos);
      std::vector<NodeId> deps;
      deps.reserve(args.size());
      for (const auto& a : args) deps.push_back(expandExpr(a, params));
      return graph_.intern({fn, std::monostate{}, std::move(deps)});
    }
    auto it = globals_.find(fn);
    if (it == globals_.end())
      throw SpecError(SpecError::Stage::Expand, "unbound identifier '" + fn + "'", pos);
    const auto* m = std::get_if<MacroDef>(&it->second);
    if (!m)
      throw SpecError(SpecError::Stage::Expand, "'" + fn + "' is an image, not a function", pos);
    if (m->params.size() != args.size())
      throw SpecError(SpecError::Stage::Expand,
                      "'" + fn + "' expects " + std::to_string(m->params.size()) +
                          " argument(s), got " + std::to_string(args.size()),
                      pos);
    // Arguments expand in the caller's scope; shared subexpressions collapse
    // in the graph, so by-name duplication costs nothing.
    ParamEnv env;
    for (size_t i = 0; i < args.size(); ++i)
      env.emplace(m->params[i], expandExpr(args[i], params));
    return expandExpr(m->body, &env);
  }

  TaskGraph graph_;
  ImportResolver* imports_;
  std::unordered_map<std::string, Global> globals_;
  std::set<std::string> imported_;
};

}  // namespace

TaskGraph expand(const Program& program, ImportResolver* imports) {
  Expander ex(imports);
  ex.processProgram(program);
  return ex.take();
}

}  // namespace pixlog
