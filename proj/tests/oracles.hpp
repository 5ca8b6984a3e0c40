#pragma once

// Independent reference implementations used by the test suites. Everything
// here is sequential and written directly from the definitions (window scans,
// BFS path semantics, flood fill); none of it calls the kernel, CCL, or reach
// code paths it is used to check.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pixlog/executor.hpp"
#include "pixlog/image.hpp"
#include "pixlog/rng.hpp"

namespace pixlog {
namespace testing {

// --- mask helpers ---------------------------------------------------------

// Build a Bool image from rows like "x.x" separated by '/' ('x'/'#'/'1' set).
ImageBuffer mask(const std::string& pattern);

// Random mask with the given true-pixel probability.
ImageBuffer randomMask(int w, int h, double density, Rng& rng);

std::vector<bool> bits(const ImageBuffer& boolImg);

// Empty string if equal, else a description of the first mismatch.
std::string maskDiff(const ImageBuffer& a, const ImageBuffer& b);

// --- window-scan oracles --------------------------------------------------

ImageBuffer dilateOracle(const ImageBuffer& a);
ImageBuffer erodeOracle(const ImageBuffer& a);

// --- path-semantics oracles -----------------------------------------------

// BFS of the reachability definition: x true iff some Moore path from x ends
// on a target pixel with all intermediate pixels in through.
ImageBuffer reachOracle(const ImageBuffer& target, const ImageBuffer& through);

// Flood-fill component index per pixel (-1 for background).
std::vector<int> componentIds(const ImageBuffer& mask);

// Union of a-components whose 3x3 dilation meets b.
ImageBuffer touchOracle(const ImageBuffer& a, const ImageBuffer& b);

// a plus the b-components in contact with a.
ImageBuffer growOracle(const ImageBuffer& a, const ImageBuffer& b);

// Pixels of a such that every Moore path leaving a|b crosses b first.
ImageBuffer surroundedOracle(const ImageBuffer& a, const ImageBuffer& b);

// --- labelling step oracles -------------------------------------------------

// 9-cell scan of the clipped window, independent of the ccl module.
uint32_t maxNeighbourOracle(const ImageBuffer& labels, int row, int col);

// One pointer-jumping step computed sequentially from the definition.
ImageBuffer mainIterationOracle(const ImageBuffer& start, const ImageBuffer& labels);

// --- pipeline helper --------------------------------------------------------

struct TempDir {
  std::filesystem::path path;
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
};

std::filesystem::path stdlibPath();

struct PipelineResult {
  ImageBuffer out;  // saved output decoded back to a Bool mask
  RunReport report;
};

// Routes an expression over named Bool masks through the real pipeline:
// stdlib import + parser + task graph + executor, with PNG round trips on
// both ends. Extra commands (e.g. let bindings) can precede the save.
PipelineResult runPipeline(const std::string& exprText,
                           const std::vector<std::pair<std::string, const ImageBuffer*>>& images,
                           int workers = 1, const std::string& extraCommands = "");

}  // namespace testing
}  // namespace pixlog
