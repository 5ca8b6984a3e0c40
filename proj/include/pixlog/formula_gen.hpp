#pragma once

#include <cstdint>
#include <string>

namespace pixlog {
namespace gen {

// Chain of `depth` unary applications alternating near and ! over a loaded
// image, ending in a save. depth 0 saves the image unchanged. The graph of
// the result has exactly depth + 2 nodes.
std::string sequentialFormula(int depth, uint64_t seed,
                              const std::string& imagePath = "input.png");

// Seeded composition of {!, &, |, near, reach, thresholds} over two loaded
// images; `size` is the operator count and every subterm is type-correct.
std::string randomFormula(int size, uint64_t seed,
                          const std::string& imagePathA = "input-a.png",
                          const std::string& imagePathB = "input-b.png");

}  // namespace gen
}  // namespace pixlog
