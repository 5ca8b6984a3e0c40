#pragma once

#include "pixlog/ccl.hpp"
#include "pixlog/image.hpp"
#include "pixlog/worker_pool.hpp"

namespace pixlog {

// Reachability: pixel x is true iff some Moore path starting at x ends on a
// target pixel with every intermediate pixel satisfying through (paths of
// length 0 or 1 impose no through-constraint). Computed as
//   dilate(target) | dilate(S)
// where S is the union of through-components meeting dilate(target),
// obtained from component labelling.
ImageBuffer reach(const ImageBuffer& target, const ImageBuffer& through, WorkerPool& pool,
                  const ccl::CclConfig& cfg = {}, ccl::CclStats* stats = nullptr,
                  const ccl::IterationHook& hook = {});

}  // namespace pixlog
