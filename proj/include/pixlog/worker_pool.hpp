#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace pixlog {

// Fixed-size pool shared by task scheduling and per-pixel kernel parallelism.
// parallelFor is deadlock-free under nesting: the calling thread claims chunks
// itself, so completion never depends on an idle pool thread picking them up.
class WorkerPool {
 public:
  explicit WorkerPool(int workers);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int workerCount() const { return workers_; }

  void submit(std::function<void()> job);

  // Runs body(begin, end) over disjoint chunks covering [0, n).
  void parallelFor(int64_t n, const std::function<void(int64_t, int64_t)>& body);

  static int defaultWorkers();

 private:
  struct ForState {
    std::atomic<int64_t> next{0};
    std::atomic<int64_t> done{0};
    int64_t total = 0;
    int64_t chunk = 1;
    const std::function<void(int64_t, int64_t)>* body = nullptr;
  };
  static void drainChunks(const std::shared_ptr<ForState>& st);
  void workerLoop();

  int workers_;
  std::vector<std::thread> threads_;
  std::deque<std::function<void()>> queue_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool stop_ = false;
};

}  // namespace pixlog
