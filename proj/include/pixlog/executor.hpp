#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pixlog/ccl.hpp"
#include "pixlog/image.hpp"
#include "pixlog/task_graph.hpp"
#include "pixlog/worker_pool.hpp"

namespace pixlog {

struct RunOptions {
  int workers = 0;  // 0 means hardware concurrency
  ccl::CclConfig ccl;
  // Relative load/save paths resolve against this directory.
  std::filesystem::path baseDir = ".";
  // Sink for log lines; defaults to stdout.
  std::function<void(const std::string&)> log;
  // When set, every component-labelling run dumps one coloured PNG per
  // iteration into this directory.
  std::optional<std::filesystem::path> debugCclDir;
};

struct TaskEvent {
  NodeId id = 0;
  std::string opcode;
  bool ran = false;
  int evaluations = 0;
  double startMs = 0;
  double endMs = 0;
};

struct RunReport {
  double computationMs = 0;
  int workers = 1;
  size_t taskCount = 0;
  std::vector<TaskEvent> events;  // indexed by node id
  std::vector<std::string> printLines;
  std::vector<std::string> savedFiles;
  std::string toJson() const;
};

// Evaluates the graph: tasks dispatch when their dependencies complete, every
// node evaluates exactly once, save tasks write files and print tasks emit
// "label=value" lines. Throws RunError naming the first failing task.
RunReport run(const TaskGraph& graph, const RunOptions& options = {});

// Direct evaluation of one task from its dependency values. Exposed for the
// benefit of tests; run() goes through this for every node.
Value evalTask(const Task& task, const std::vector<Value>& deps, WorkerPool& pool,
               const RunOptions& options);

}  // namespace pixlog
