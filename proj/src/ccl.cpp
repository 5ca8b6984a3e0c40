#include "pixlog/ccl.hpp"

#include <algorithm>
#include <atomic>
#include <utility>
#include <vector>

namespace pixlog {
namespace ccl {

namespace {

void requireStart(const ImageBuffer& start) {
  if (start.kind() != PixelKind::Bool)
    throw RunError(std::string("component labelling expects a boolean image, got ") +
                   pixelKindName(start.kind()));
}

void atomicMax(uint32_t* cell, uint32_t v) {
  std::atomic_ref<uint32_t> ref(*cell);
  uint32_t cur = ref.load(std::memory_order_relaxed);
  while (cur < v && !ref.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
  }
}

}  // namespace

ImageBuffer initLabels(const ImageBuffer& start) {
  requireStart(start);
  const int w = start.width(), h = start.height();
  ImageBuffer out(w, h, PixelKind::LabelPair);
  auto src = start.boolData();
  auto dst = out.labelData();
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      size_t i = size_t(r) * w + c;
      dst[i] = src[i] ? packLabel(r, c, w) : kNullLabel;
    }
  return out;
}

uint32_t maxNeighbour(const ImageBuffer& labels, int row, int col) {
  const int w = labels.width(), h = labels.height();
  auto data = labels.labelData();
  int r0 = row > 0 ? row - 1 : 0;
  int r1 = row < h - 1 ? row + 1 : h - 1;
  int c0 = col > 0 ? col - 1 : 0;
  int c1 = col < w - 1 ? col + 1 : w - 1;
  uint32_t best = kNullLabel;  // null packs below every coordinate
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) best = std::max(best, data[size_t(r) * w + c]);
  return best;
}

void mainIteration(const ImageBuffer& start, const ImageBuffer& input, ImageBuffer& output,
                   WorkerPool& pool) {
  const int w = start.width(), h = start.height();
  auto on = start.boolData();
  auto in = input.labelData();
  auto out = output.labelData();
  pool.parallelFor(h, [&](int64_t rLo, int64_t rHi) {
    for (int r = int(rLo); r < int(rHi); ++r)
      for (int c = 0; c < w; ++c) {
        size_t i = size_t(r) * w + c;
        if (!on[i]) {
          out[i] = kNullLabel;
          continue;
        }
        auto [pr, pc] = unpackLabel(in[i], w);
        out[i] = maxNeighbour(input, pr, pc);
      }
  });
}

int64_t reconnect(const ImageBuffer& start, ImageBuffer& labels, WorkerPool& pool) {
  const int w = start.width(), h = start.height();
  auto on = start.boolData();
  auto data = labels.labelData();
  std::atomic<int64_t> writes{0};
  pool.parallelFor(h, [&](int64_t rLo, int64_t rHi) {
    int64_t local = 0;
    for (int r = int(rLo); r < int(rHi); ++r)
      for (int c = 0; c < w; ++c) {
        size_t i = size_t(r) * w + c;
        if (!on[i]) continue;
        std::atomic_ref<uint32_t> self(data[i]);
        auto [pr, pc] = unpackLabel(self.load(std::memory_order_relaxed), w);
        uint32_t m = maxNeighbour(labels, r, c);
        size_t pi = size_t(pr) * w + pc;
        std::atomic_ref<uint32_t> pointee(data[pi]);
        if (m > pointee.load(std::memory_order_relaxed)) {
          atomicMax(&data[pi], m);
          ++local;
        }
      }
    if (local) writes.fetch_add(local, std::memory_order_relaxed);
  });
  return writes.load();
}

bool terminationCheck(const ImageBuffer& start, const ImageBuffer& labels, WorkerPool& pool) {
  const int w = start.width(), h = start.height();
  auto on = start.boolData();
  auto data = labels.labelData();
  std::atomic<bool> mismatch{false};
  pool.parallelFor(h, [&](int64_t rLo, int64_t rHi) {
    for (int r = int(rLo); r < int(rHi) && !mismatch.load(std::memory_order_relaxed); ++r)
      for (int c = 0; c < w; ++c) {
        size_t i = size_t(r) * w + c;
        if (!on[i]) continue;
        uint32_t mine = data[i];
        int r0 = r > 0 ? r - 1 : 0, r1 = r < h - 1 ? r + 1 : h - 1;
        int c0 = c > 0 ? c - 1 : 0, c1 = c < w - 1 ? c + 1 : w - 1;
        for (int rr = r0; rr <= r1; ++rr)
          for (int cc = c0; cc <= c1; ++cc) {
            size_t j = size_t(rr) * w + cc;
            if (on[j] && data[j] != mine) {
              mismatch.store(true, std::memory_order_relaxed);
              return;
            }
          }
      }
  });
  return !mismatch.load();
}

ImageBuffer label(const ImageBuffer& start, const CclConfig& cfg, WorkerPool& pool,
                  CclStats* stats, const IterationHook& hook) {
  requireStart(start);
  if (cfg.reconnectInterval < 1)
    throw RunError("reconnect interval must be at least 1, got " +
                   std::to_string(cfg.reconnectInterval));
  const int guard =
      cfg.maxRounds > 0 ? cfg.maxRounds : 4 * (start.width() + start.height());

  CclStats local;
  ImageBuffer current = initLabels(start);
  ImageBuffer scratch(start.width(), start.height(), PixelKind::LabelPair);

  for (;;) {
    for (int i = 0; i < cfg.reconnectInterval; ++i) {
      mainIteration(start, current, scratch, pool);
      std::swap(current, scratch);
      ++local.mainIterations;
      ++local.totalIterations;
      if (hook) hook(local.totalIterations, current);
    }
    local.reconnectWrites += reconnect(start, current, pool);
    ++local.reconnectPasses;
    ++local.totalIterations;
    if (hook) hook(local.totalIterations, current);

    if (terminationCheck(start, current, pool)) {
      local.converged = true;
      break;
    }
    if (local.mainIterations >= guard)
      throw RunError("component labelling exceeded the max-rounds guard (" +
                     std::to_string(guard) + " main iterations on " +
                     std::to_string(start.width()) + "x" + std::to_string(start.height()) +
                     " image)");
  }
  if (stats) *stats = local;
  return current;
}

ImageBuffer floodFillLabel(const ImageBuffer& start) {
  requireStart(start);
  const int w = start.width(), h = start.height();
  auto on = start.boolData();
  ImageBuffer out(w, h, PixelKind::LabelPair);
  auto dst = out.labelData();
  std::vector<uint8_t> seen(start.pixelCount(), 0);
  std::vector<size_t> stack, component;

  for (size_t seed = 0; seed < start.pixelCount(); ++seed) {
    if (!on[seed] || seen[seed]) continue;
    stack.assign(1, seed);
    seen[seed] = 1;
    component.clear();
    uint32_t best = kNullLabel;
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      component.push_back(i);
      int r = int(i / size_t(w)), c = int(i % size_t(w));
      best = std::max(best, packLabel(r, c, w));
      int r0 = r > 0 ? r - 1 : 0, r1 = r < h - 1 ? r + 1 : h - 1;
      int c0 = c > 0 ? c - 1 : 0, c1 = c < w - 1 ? c + 1 : w - 1;
      for (int rr = r0; rr <= r1; ++rr)
        for (int cc = c0; cc <= c1; ++cc) {
          size_t j = size_t(rr) * w + cc;
          if (on[j] && !seen[j]) {
            seen[j] = 1;
            stack.push_back(j);
          }
        }
    }
    for (size_t i : component) dst[i] = best;
  }
  return out;
}

}  // namespace ccl
}  // namespace pixlog
