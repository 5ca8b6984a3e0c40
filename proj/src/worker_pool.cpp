#include "pixlog/worker_pool.hpp"

#include <algorithm>
#include <cassert>

namespace pixlog {

WorkerPool::WorkerPool(int workers) : workers_(std::max(1, workers)) {
  threads_.reserve(size_t(workers_));
  for (int i = 0; i < workers_; ++i) threads_.emplace_back([this] { workerLoop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  cv_.notify_all();
  for (auto& t : threads_) t.join();
}

int WorkerPool::defaultWorkers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

void WorkerPool::submit(std::function<void()> job) {
  {
    std::lock_guard lock(mutex_);
    assert(!stop_);
    queue_.push_back(std::move(job));
  }
  cv_.notify_one();
}

void WorkerPool::workerLoop() {
  for (;;) {
    std::function<void()> job;
    {
      std::unique_lock lock(mutex_);
      cv_.wait(lock, [this] { return stop_ || !queue_.empty(); });
      if (queue_.empty()) return;  // stop_ set and drained
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    job();
  }
}

void WorkerPool::drainChunks(const std::shared_ptr<ForState>& st) {
  for (;;) {
    int64_t b = st->next.fetch_add(st->chunk, std::memory_order_relaxed);
    if (b >= st->total) return;
    int64_t e = std::min(st->total, b + st->chunk);
    (*st->body)(b, e);
    if (st->done.fetch_add(e - b, std::memory_order_acq_rel) + (e - b) == st->total)
      st->done.notify_all();
  }
}

void WorkerPool::parallelFor(int64_t n, const std::function<void(int64_t, int64_t)>& body) {
  if (n <= 0) return;
  int64_t chunk = std::max<int64_t>(2048, n / (int64_t(workers_) * 8));
  if (workers_ == 1 || n <= chunk) {
    body(0, n);
    return;
  }
  auto st = std::make_shared<ForState>();
  st->total = n;
  st->chunk = chunk;
  st->body = &body;
  for (int i = 0; i < workers_ - 1; ++i)
    submit([st] { drainChunks(st); });
  drainChunks(st);
  // Wait for chunks claimed by other threads. body stays alive until done.
  int64_t d;
  while ((d = st->done.load(std::memory_order_acquire)) < n) st->done.wait(d);
}

}  // namespace pixlog
