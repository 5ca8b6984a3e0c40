#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pixlog/ast.hpp"

namespace pixlog {

using NodeId = uint32_t;
using Payload = std::variant<std::monostate, double, std::string>;

// Opcodes: "load" (payload path), "const" (payload number), "save"/"print"
// (payload path/label, one dependency), built-in function names, and the
// operator symbols themselves.
struct Task {
  std::string opcode;
  Payload payload;
  std::vector<NodeId> deps;  // ids of already-created nodes
};

std::string payloadText(const Payload& p);

// Hash-consed DAG of tasks. Structurally identical tasks share one node, and
// dependencies always have smaller ids, so acyclicity holds by construction.
class TaskGraph {
 public:
  NodeId intern(Task t);

  size_t nodeCount() const { return nodes_.size(); }
  const Task& node(NodeId id) const { return nodes_[id]; }
  const std::vector<Task>& nodes() const { return nodes_; }

  void addOutput(NodeId id);
  const std::vector<NodeId>& outputs() const { return outputs_; }

  // Dependency-respecting order, stable by node id.
  std::vector<NodeId> toposort() const;

  // One node per line: "id opcode payload deps".
  std::string dump() const;

  size_t countOpcode(const std::string& opcode) const;

 private:
  std::vector<Task> nodes_;
  std::vector<NodeId> outputs_;
  std::unordered_map<std::string, NodeId> interned_;
};

// Maps an import path to the file's parsed commands plus a canonical key used
// to import each file at most once.
struct ImportResolver {
  virtual ~ImportResolver() = default;
  virtual std::string canonicalKey(const std::string& path) = 0;
  // Throws SpecError (expand stage) if the file cannot be resolved.
  virtual Program load(const std::string& path) = 0;
};

// Reads .imgql files relative to a base directory.
class FileImportResolver : public ImportResolver {
 public:
  explicit FileImportResolver(std::string baseDir) : baseDir_(std::move(baseDir)) {}
  std::string canonicalKey(const std::string& path) override;
  Program load(const std::string& path) override;

 private:
  std::string resolve(const std::string& path) const;
  std::string baseDir_;
};

// Expands macros and imports into a task graph. Macro calls substitute
// arguments by name (arguments are expanded in the caller's scope, so no
// capture), hash-consing shares every repeated subexpression, and bindings
// that never feed a save or print produce no tasks.
TaskGraph expand(const Program& program, ImportResolver* imports = nullptr);

}  // namespace pixlog
