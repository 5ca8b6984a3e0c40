#include "pixlog/formula_gen.hpp"

#include "pixlog/rng.hpp"

namespace pixlog {
namespace gen {

std::string sequentialFormula(int depth, uint64_t seed, const std::string& imagePath) {
  (void)seed;  // the chain is fully determined by its depth
  std::string expr = "x";
  for (int i = 0; i < depth; ++i)
    expr = (i % 2 == 0) ? "near(" + expr + ")" : "!(" + expr + ")";
  std::string out = "// sequential chain, depth " + std::to_string(depth) + "\n";
  out += "load x = \"" + imagePath + "\"\n";
  out += "save \"sequential-out.png\" " + expr + "\n";
  return out;
}

namespace {

// Emits a boolean expression using exactly `budget` operators; thresholds
// over the loaded images are the leaves (budget 1).
std::string boolExpr(Rng& rng, int budget) {
  if (budget <= 1) {
    const char* img = rng.chance(0.5) ? "imgA" : "imgB";
    static const char* cmps[] = {">.", ">=.", "<.", "<=."};
    const char* cmp = cmps[rng.below(4)];
    return std::string(img) + " " + cmp + " " + std::to_string(rng.below(65536));
  }
  switch (rng.below(budget >= 3 ? 5 : 2)) {
    case 0: return "!(" + boolExpr(rng, budget - 1) + ")";
    case 1: return "near(" + boolExpr(rng, budget - 1) + ")";
    case 2:
    case 3: {
      int left = 1 + int(rng.below(uint64_t(budget - 2)));
      const char* op = rng.chance(0.5) ? "&" : "|";
      return "(" + boolExpr(rng, left) + ") " + op + " (" + boolExpr(rng, budget - 1 - left) +
             ")";
    }
    default: {
      int left = 1 + int(rng.below(uint64_t(budget - 2)));
      return "reach(" + boolExpr(rng, left) + ", " + boolExpr(rng, budget - 1 - left) + ")";
    }
  }
}

}  // namespace

std::string randomFormula(int size, uint64_t seed, const std::string& imagePathA,
                          const std::string& imagePathB) {
  Rng rng(seed);
  std::string out = "// random formula, size " + std::to_string(size) + ", seed " +
                    std::to_string(seed) + "\n";
  out += "load imgA = \"" + imagePathA + "\"\n";
  out += "load imgB = \"" + imagePathB + "\"\n";
  out += "save \"random-out.png\" " + boolExpr(rng, size < 1 ? 1 : size) + "\n";
  return out;
}

}  // namespace gen
}  // namespace pixlog
