#include "pixlog/executor.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>

#include <json.hpp>

#include "pixlog/kernels.hpp"
#include "pixlog/png_io.hpp"
#include "pixlog/reach.hpp"

namespace pixlog {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::filesystem::path resolvePath(const RunOptions& options, const std::string& path) {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : options.baseDir / p;
}

const ImageBuffer& imageArg(const Value& v, const std::string& opcode) {
  if (!v.isImage()) throw RunError("'" + opcode + "' expects an image, got a number");
  if (v.components() != 1)
    throw RunError("'" + opcode + "' expects a single-component image, got " +
                   std::to_string(v.components()) + " components");
  return v.img();
}

double numberArg(const Value& v, const std::string& opcode) {
  if (!v.isNumber()) throw RunError("'" + opcode + "' expects a number, got " + v.describe());
  return v.asNumber();
}

// Boolean arguments accept numeric images as masks (nonzero means true).
ImagePtr boolArg(const Value& v, const std::string& opcode, WorkerPool& pool) {
  const ImageBuffer& img = imageArg(v, opcode);
  if (img.kind() == PixelKind::Bool) return v.imgPtr();
  if (img.kind() == PixelKind::U16)
    return std::make_shared<const ImageBuffer>(
        kernels::threshold(kernels::CmpOp::Gt, img, 0.0, pool));
  throw RunError("'" + opcode + "' expects a boolean image, got " + pixelKindName(img.kind()));
}

std::optional<kernels::CmpOp> cmpOpFor(const std::string& opcode) {
  if (opcode == ">.") return kernels::CmpOp::Gt;
  if (opcode == ">=.") return kernels::CmpOp::Ge;
  if (opcode == "<.") return kernels::CmpOp::Lt;
  if (opcode == "<=.") return kernels::CmpOp::Le;
  if (opcode == "=.") return kernels::CmpOp::Eq;
  return std::nullopt;
}

ccl::IterationHook debugHook(const RunOptions& options, NodeId id) {
  if (!options.debugCclDir) return {};
  std::filesystem::path dir = *options.debugCclDir;
  std::filesystem::create_directories(dir);
  return [dir, id](int iteration, const ImageBuffer& labels) {
    char name[64];
    std::snprintf(name, sizeof(name), "task%u-iter%03d.png", id, iteration);
    savePng(dir / name, Value::image(std::make_shared<const ImageBuffer>(labels)));
  };
}

}  // namespace

Value evalTask(const Task& task, const std::vector<Value>& deps, WorkerPool& pool,
               const RunOptions& options) {
  const std::string& op = task.opcode;

  if (op == "const") return Value::number(std::get<double>(task.payload));
  if (op == "load") return loadPng(resolvePath(options, std::get<std::string>(task.payload)));
  if (op == "save") {
    if (!deps[0].isImage())
      throw RunError("cannot save a number as an image (use print)");
    savePng(resolvePath(options, std::get<std::string>(task.payload)), deps[0]);
    return deps[0];
  }
  if (op == "print") return deps[0];

  if (op == "near") return Value::image(kernels::dilate(*boolArg(deps[0], op, pool), pool));
  if (op == "!") return Value::image(kernels::logicalNot(*boolArg(deps[0], op, pool), pool));
  if (op == "&")
    return Value::image(
        kernels::logicalAnd(*boolArg(deps[0], op, pool), *boolArg(deps[1], op, pool), pool));
  if (op == "|")
    return Value::image(
        kernels::logicalOr(*boolArg(deps[0], op, pool), *boolArg(deps[1], op, pool), pool));
  if (op == "reach")
    return Value::image(reach(*boolArg(deps[0], op, pool), *boolArg(deps[1], op, pool), pool,
                              options.ccl, nullptr, {}));
  if (auto cmp = cmpOpFor(op))
    return Value::image(
        kernels::threshold(*cmp, imageArg(deps[0], op), numberArg(deps[1], op), pool));
  if (op == "+" || op == "-" || op == "*" || op == "/")
    return Value::number(kernels::arith(op[0], numberArg(deps[0], op), numberArg(deps[1], op)));
  if (op == "intensity") {
    const ImageBuffer& img = imageArg(deps[0], op);
    if (img.kind() != PixelKind::U16)
      throw RunError(std::string("'intensity' expects a numeric image, got ") +
                     pixelKindName(img.kind()));
    return deps[0];  // identity on single-component numeric images
  }
  if (op == "volume")
    return Value::number(double(kernels::countTrue(*boolArg(deps[0], op, pool), pool)));

  throw RunError("unknown opcode '" + op + "'");
}

namespace {

struct NodeRuntime {
  std::atomic<int> pendingDeps{0};
  std::atomic<uint8_t> state{0};  // 0 pending, 1 done, 2 failed
  Value value;
};

struct RunContext {
  const TaskGraph& graph;
  const RunOptions& options;
  WorkerPool& pool;
  Clock::time_point t0;
  std::vector<NodeRuntime> nodes;
  std::vector<std::vector<NodeId>> dependents;
  std::atomic<int64_t> remaining{0};
  std::mutex mutex;  // guards firstFailure and log sink
  std::optional<std::pair<NodeId, std::string>> firstFailure;
  RunReport* report;

  void log(const std::string& line) {
    std::lock_guard lock(mutex);
    if (options.log) {
      options.log(line);
    } else {
      std::fprintf(stdout, "%s\n", line.c_str());
      std::fflush(stdout);
    }
  }
};

void finishNode(RunContext& ctx, NodeId id);

void evalNode(RunContext& ctx, NodeId id) {
  const Task& task = ctx.graph.node(id);
  TaskEvent& ev = ctx.report->events[id];
  ev.ran = true;
  ev.evaluations++;
  ev.startMs = msSince(ctx.t0);

  bool ok = true;
  std::string error;
  try {
    std::vector<Value> deps;
    deps.reserve(task.deps.size());
    for (NodeId d : task.deps) deps.push_back(ctx.nodes[d].value);

    if (task.opcode == "save")
      ctx.log("saving file " + std::get<std::string>(task.payload));

    Value v;
    if (task.opcode == "reach" && ctx.options.debugCclDir) {
      v = Value::image(reach(*boolArg(deps[0], task.opcode, ctx.pool),
                             *boolArg(deps[1], task.opcode, ctx.pool), ctx.pool, ctx.options.ccl,
                             nullptr, debugHook(ctx.options, id)));
    } else {
      v = evalTask(task, deps, ctx.pool, ctx.options);
    }
    if (task.opcode == "print")
      ctx.log(std::get<std::string>(task.payload) + "=" + v.describe());
    ctx.nodes[id].value = std::move(v);
  } catch (const std::exception& e) {
    ok = false;
    error = e.what();
  }

  ev.endMs = msSince(ctx.t0);
  {
    char line[160];
    std::snprintf(line, sizeof(line), "task %u %s %.3fms", id, task.opcode.c_str(),
                  ev.endMs - ev.startMs);
    ctx.log(line);
  }

  if (ok) {
    ctx.nodes[id].state.store(1, std::memory_order_release);
  } else {
    ctx.nodes[id].state.store(2, std::memory_order_release);
    std::lock_guard lock(ctx.mutex);
    if (!ctx.firstFailure) ctx.firstFailure = {id, error};
  }
  finishNode(ctx, id);
}

// Decrements dependents and schedules the ready ones; nodes whose
// dependencies failed are aborted without evaluation (iteratively, so long
// chains do not recurse).
void finishNode(RunContext& ctx, NodeId id) {
  std::vector<NodeId> worklist{id};
  while (!worklist.empty()) {
    NodeId cur = worklist.back();
    worklist.pop_back();
    for (NodeId dep : ctx.dependents[cur]) {
      if (ctx.nodes[dep].pendingDeps.fetch_sub(1, std::memory_order_acq_rel) != 1) continue;
      bool anyFailed = false;
      for (NodeId d : ctx.graph.node(dep).deps)
        if (ctx.nodes[d].state.load(std::memory_order_acquire) == 2) anyFailed = true;
      if (anyFailed) {
        ctx.nodes[dep].state.store(2, std::memory_order_release);
        worklist.push_back(dep);
        if (ctx.remaining.fetch_sub(1, std::memory_order_acq_rel) == 1)
          ctx.remaining.notify_all();
      } else {
        ctx.pool.submit([&ctx, dep] { evalNode(ctx, dep); });
      }
    }
    if (cur == id) {
      if (ctx.remaining.fetch_sub(1, std::memory_order_acq_rel) == 1) ctx.remaining.notify_all();
    }
  }
}

}  // namespace

RunReport run(const TaskGraph& graph, const RunOptions& options) {
  const size_t n = graph.nodeCount();
  RunReport report;
  report.taskCount = n;
  report.events.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    report.events[i].id = i;
    report.events[i].opcode = graph.node(i).opcode;
  }

  int workers = options.workers > 0 ? options.workers : WorkerPool::defaultWorkers();
  report.workers = workers;
  WorkerPool pool(workers);

  RunContext ctx{graph, options, pool, Clock::now(), {}, {}, {}, {}, {}, &report};
  ctx.nodes = std::vector<NodeRuntime>(n);
  ctx.dependents.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    const Task& t = graph.node(i);
    ctx.nodes[i].pendingDeps.store(int(t.deps.size()), std::memory_order_relaxed);
    for (NodeId d : t.deps) ctx.dependents[d].push_back(i);
  }
  ctx.remaining.store(int64_t(n), std::memory_order_relaxed);

  ctx.t0 = Clock::now();
  ctx.log("starting computation");

  for (NodeId i = 0; i < n; ++i)
    if (graph.node(i).deps.empty()) pool.submit([&ctx, i] { evalNode(ctx, i); });

  int64_t left;
  while ((left = ctx.remaining.load(std::memory_order_acquire)) > 0) ctx.remaining.wait(left);

  report.computationMs = msSince(ctx.t0);

  // Deterministic output listing, in program order.
  for (NodeId out : graph.outputs()) {
    const Task& t = graph.node(out);
    if (ctx.nodes[out].state.load() != 1) continue;
    if (t.opcode == "save")
      report.savedFiles.push_back(std::get<std::string>(t.payload));
    else if (t.opcode == "print")
      report.printLines.push_back(std::get<std::string>(t.payload) + "=" +
                                  ctx.nodes[out].value.describe());
  }

  if (ctx.firstFailure) {
    const auto& [id, msg] = *ctx.firstFailure;
    throw RunError(msg, id, graph.node(id).opcode);
  }
  return report;
}

std::string RunReport::toJson() const {
  nlohmann::json j;
  j["workers"] = workers;
  j["tasks"] = taskCount;
  j["computation_ms"] = computationMs;
  nlohmann::json evs = nlohmann::json::array();
  for (const TaskEvent& e : events) {
    evs.push_back({{"id", e.id},
                   {"opcode", e.opcode},
                   {"ran", e.ran},
                   {"evaluations", e.evaluations},
                   {"start_ms", e.startMs},
                   {"end_ms", e.endMs}});
  }
  j["events"] = std::move(evs);
  j["prints"] = printLines;
  j["saves"] = savedFiles;
  return j.dump(2);
}

}  // namespace pixlog
