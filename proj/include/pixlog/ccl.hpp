#pragma once

#include <functional>

#include "pixlog/image.hpp"
#include "pixlog/worker_pool.hpp"

namespace pixlog {
namespace ccl {

struct CclConfig {
  // Main iterations between reconnect passes. The reference behaviour uses 8;
  // 16 is also accepted via configuration.
  int reconnectInterval = 8;
  // Abort threshold on total main iterations. 0 means 4 * (width + height).
  int maxRounds = 0;
};

struct CclStats {
  int mainIterations = 0;
  int reconnectPasses = 0;
  int64_t reconnectWrites = 0;   // label cells actually raised by reconnect
  int totalIterations = 0;       // main iterations plus reconnect passes
  bool converged = false;
};

// Called after every main iteration and reconnect pass with the current
// label image (iteration counts both kinds, 1-based).
using IterationHook = std::function<void(int iteration, const ImageBuffer& labels)>;

// Each true start pixel labelled with its own packed coordinates, null
// elsewhere.
ImageBuffer initLabels(const ImageBuffer& start);

// Lexicographic max over non-null labels in the clipped 3x3 window centred at
// (row, col), the centre included. kNullLabel if the window holds none.
uint32_t maxNeighbour(const ImageBuffer& labels, int row, int col);

// Pointer jumping step: every start pixel adopts the neighbourhood max of the
// cell its current label points at. Output is written to a separate buffer.
void mainIteration(const ImageBuffer& start, const ImageBuffer& input, ImageBuffer& output,
                   WorkerPool& pool);

// Corrective pass for label fragments meeting at concave corners: for each
// start pixel p with label q, raises labels(q) to the max of p's own window
// via an atomic-maximum write. In place; returns the number of raised cells.
int64_t reconnect(const ImageBuffer& start, ImageBuffer& labels, WorkerPool& pool);

// True iff no start pixel has a start neighbour carrying a different label.
bool terminationCheck(const ImageBuffer& start, const ImageBuffer& labels, WorkerPool& pool);

// Full driver. On return every component carries one uniform label equal to
// the lexicographic max coordinate of the component. Throws RunError if the
// max-rounds guard is exceeded.
ImageBuffer label(const ImageBuffer& start, const CclConfig& cfg, WorkerPool& pool,
                  CclStats* stats = nullptr, const IterationHook& hook = {});

// Sequential flood-fill labelling with the same canonical form (component
// lex-max coordinate). Reference implementation for equivalence checks.
ImageBuffer floodFillLabel(const ImageBuffer& start);

}  // namespace ccl
}  // namespace pixlog
