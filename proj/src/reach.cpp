#include "pixlog/reach.hpp"

#include <atomic>
#include <vector>

#include "pixlog/kernels.hpp"

namespace pixlog {

ImageBuffer reach(const ImageBuffer& target, const ImageBuffer& through, WorkerPool& pool,
                  const ccl::CclConfig& cfg, ccl::CclStats* stats,
                  const ccl::IterationHook& hook) {
  if (target.kind() != PixelKind::Bool || through.kind() != PixelKind::Bool)
    throw RunError("reach expects boolean images");
  if (!target.sameShape(through))
    throw RunError("reach: dimension mismatch (" + std::to_string(target.width()) + "x" +
                   std::to_string(target.height()) + " vs " + std::to_string(through.width()) +
                   "x" + std::to_string(through.height()) + ")");

  ImageBuffer nearTarget = kernels::dilate(target, pool);
  ImageBuffer labels = ccl::label(through, cfg, pool, stats, hook);

  // Flag every through-component with a pixel under dilate(target). Writes
  // are idempotent boolean sets, so racing is harmless.
  const size_t n = target.pixelCount();
  std::vector<uint8_t> flagged(n + 1, 0);
  auto nt = nearTarget.boolData();
  auto lab = labels.labelData();
  pool.parallelFor(int64_t(n), [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      uint32_t l = lab[size_t(i)];
      if (l != kNullLabel && nt[size_t(i)]) {
        std::atomic_ref<uint8_t> f(flagged[l]);
        f.store(1, std::memory_order_relaxed);
      }
    }
  });

  ImageBuffer selected(target.width(), target.height(), PixelKind::Bool);
  auto sel = selected.boolData();
  pool.parallelFor(int64_t(n), [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      uint32_t l = lab[size_t(i)];
      sel[size_t(i)] = (l != kNullLabel && flagged[l]) ? 1 : 0;
    }
  });

  ImageBuffer nearSelected = kernels::dilate(selected, pool);
  return kernels::logicalOr(nearTarget, nearSelected, pool);
}

}  // namespace pixlog
