#include <doctest.h>

#include "oracles.hpp"
#include "pixlog/ccl.hpp"
#include "pixlog/synth.hpp"

using namespace pixlog;
using namespace pixlog::ccl;
using testing::mask;
using testing::randomMask;

namespace {

WorkerPool& pool() {
  static WorkerPool p(2);
  return p;
}

// Drives main iterations until the pointer-jumping fixpoint (no reconnect).
int iterateToFixpoint(const ImageBuffer& start, ImageBuffer& labels, int maxIters = 1000) {
  ImageBuffer scratch(start.width(), start.height(), PixelKind::LabelPair);
  for (int i = 0; i < maxIters; ++i) {
    mainIteration(start, labels, scratch, pool());
    if (scratch == labels) return i;
    std::swap(labels, scratch);
  }
  return maxIters;
}

bool labelsNonDecreasing(const ImageBuffer& before, const ImageBuffer& after) {
  auto a = before.labelData();
  auto b = after.labelData();
  for (size_t i = 0; i < a.size(); ++i)
    if (b[i] < a[i]) return false;
  return true;
}

// Every non-null label names a start pixel inside the holder's component.
bool containmentHolds(const ImageBuffer& start, const ImageBuffer& labels) {
  auto ids = testing::componentIds(start);
  for (int r = 0; r < start.height(); ++r)
    for (int c = 0; c < start.width(); ++c) {
      uint32_t l = labels.labelAt(r, c);
      if (!start.boolAt(r, c)) {
        if (l != kNullLabel) return false;
        continue;
      }
      if (l == kNullLabel) return false;
      auto [lr, lc] = unpackLabel(l, start.width());
      if (!start.boolAt(lr, lc)) return false;
      if (ids[start.idx(lr, lc)] != ids[start.idx(r, c)]) return false;
    }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("ccl");

TEST_CASE("initLabels") {
  SUBCASE("all false") {
    ImageBuffer l = initLabels(mask("../.."));
    for (uint32_t v : l.labelData()) CHECK(v == kNullLabel);
  }
  SUBCASE("single pixel at (2,3)") {
    ImageBuffer start(5, 4, PixelKind::Bool);
    start.boolData()[start.idx(2, 3)] = 1;
    ImageBuffer l = initLabels(start);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 5; ++c)
        CHECK(l.labelAt(r, c) == ((r == 2 && c == 3) ? packLabel(2, 3, 5) : kNullLabel));
  }
  SUBCASE("full image") {
    ImageBuffer start(3, 3, PixelKind::Bool);
    for (auto& v : start.boolData()) v = 1;
    ImageBuffer l = initLabels(start);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(l.labelAt(r, c) == packLabel(r, c, 3));
  }
}

TEST_CASE("maxNeighbour") {
  SUBCASE("isolated pixel sees only itself") {
    ImageBuffer l = initLabels(mask("...../..x../....."));
    CHECK(maxNeighbour(l, 1, 2) == packLabel(1, 2, 5));
    CHECK(maxNeighbour(l, 0, 0) == kNullLabel);
  }
  SUBCASE("row-first lexicographic order") {
    // Labels (0,1) and (1,0) in one window: (1,0) wins.
    ImageBuffer l = initLabels(mask(".x/x."));
    CHECK(maxNeighbour(l, 0, 0) == packLabel(1, 0, 2));
  }
  SUBCASE("random fields match the scan oracle") {
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
      ImageBuffer l = initLabels(randomMask(4, 4, rng.unit(), rng));
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          CHECK(maxNeighbour(l, r, c) == testing::maxNeighbourOracle(l, r, c));
    }
  }
}

TEST_CASE("mainIteration hand-executed on a 1x3 row") {
  ImageBuffer start = mask("xxx");
  ImageBuffer l = initLabels(start);
  ImageBuffer out(3, 1, PixelKind::LabelPair);
  mainIteration(start, l, out, pool());
  // Each pixel adopts the window max of the cell it points at. (0,0) points
  // at itself and its window only reaches (0,1).
  CHECK(out.labelAt(0, 0) == packLabel(0, 1, 3));
  CHECK(out.labelAt(0, 1) == packLabel(0, 2, 3));
  CHECK(out.labelAt(0, 2) == packLabel(0, 2, 3));
  CHECK(out == testing::mainIterationOracle(start, l));
  ImageBuffer out2(3, 1, PixelKind::LabelPair);
  mainIteration(start, out, out2, pool());
  for (int c = 0; c < 3; ++c) CHECK(out2.labelAt(0, c) == packLabel(0, 2, 3));
}

TEST_CASE("mainIteration merges across the diagonal") {
  ImageBuffer start = mask("x./.x");
  ImageBuffer l = initLabels(start);
  ImageBuffer out(2, 2, PixelKind::LabelPair);
  mainIteration(start, l, out, pool());
  CHECK(out.labelAt(0, 0) == packLabel(1, 1, 2));
  CHECK(out.labelAt(1, 1) == packLabel(1, 1, 2));
}

TEST_CASE("mainIteration keeps uniform components fixed") {
  ImageBuffer start = mask("xx./xx./...");
  ImageBuffer l = ccl::floodFillLabel(start);
  ImageBuffer out(3, 3, PixelKind::LabelPair);
  mainIteration(start, l, out, pool());
  CHECK(out == l);
}

TEST_CASE("mainIteration matches the step oracle on random masks") {
  Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    ImageBuffer start = randomMask(9, 8, 0.5, rng);
    ImageBuffer l = initLabels(start);
    for (int step = 0; step < 3; ++step) {
      ImageBuffer expect = testing::mainIterationOracle(start, l);
      ImageBuffer out(9, 8, PixelKind::LabelPair);
      mainIteration(start, l, out, pool());
      CHECK(out == expect);
      l = std::move(out);
    }
  }
}

TEST_CASE("reconnect repairs the concave corner") {
  // Arms meeting at (0,0) with the diagonal (1,1) missing. The pointer
  // jumping fixpoint leaves the horizontal tail labelled by its own arm max.
  ImageBuffer start = mask(
      "xxxxx/"
      "x..../"
      "x..../"
      "x..../"
      "x....");
  ImageBuffer l = initLabels(start);
  iterateToFixpoint(start, l);
  CHECK(!terminationCheck(start, l, pool()));  // stalled, labels still split

  int64_t writes = reconnect(start, l, pool());
  CHECK(writes >= 1);
  iterateToFixpoint(start, l);
  CHECK(terminationCheck(start, l, pool()));
  uint32_t expect = packLabel(4, 0, 5);  // component lex-max
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      if (start.boolAt(r, c)) CHECK(l.labelAt(r, c) == expect);
}

TEST_CASE("reconnect leaves converged labels unchanged") {
  ImageBuffer start = mask("xx../xx../..../..xx");
  ImageBuffer l = ccl::floodFillLabel(start);
  ImageBuffer before = l;
  CHECK(reconnect(start, l, pool()) == 0);
  CHECK(l == before);
}

TEST_CASE("labels never cross component boundaries") {
  Rng rng(34);
  for (int i = 0; i < 30; ++i) {
    ImageBuffer start = randomMask(12, 12, 0.45, rng);
    ImageBuffer l = initLabels(start);
    ImageBuffer scratch(12, 12, PixelKind::LabelPair);
    for (int step = 0; step < 6; ++step) {
      mainIteration(start, l, scratch, pool());
      std::swap(l, scratch);
      CHECK(containmentHolds(start, l));
    }
    reconnect(start, l, pool());
    CHECK(containmentHolds(start, l));
  }
}

TEST_CASE("labels are monotone across steps") {
  Rng rng(35);
  for (int i = 0; i < 20; ++i) {
    ImageBuffer start = randomMask(10, 10, 0.5, rng);
    ImageBuffer l = initLabels(start);
    ImageBuffer scratch(10, 10, PixelKind::LabelPair);
    for (int step = 0; step < 8; ++step) {
      ImageBuffer before = l;
      if (step % 3 == 2) {
        reconnect(start, l, pool());
      } else {
        mainIteration(start, before, l, pool());
      }
      CHECK(labelsNonDecreasing(before, l));
    }
  }
}

TEST_CASE("terminationCheck") {
  CHECK(terminationCheck(mask("../.."), initLabels(mask("../..")), pool()));
  ImageBuffer two = mask("xx");
  CHECK(!terminationCheck(two, initLabels(two), pool()));
  CHECK(terminationCheck(two, ccl::floodFillLabel(two), pool()));
}

TEST_CASE("label: all-true 3x3 converges to the max coordinate") {
  ImageBuffer start(3, 3, PixelKind::Bool);
  for (auto& v : start.boolData()) v = 1;
  CclStats stats;
  ImageBuffer l = label(start, {}, pool(), &stats);
  CHECK(stats.converged);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(l.labelAt(r, c) == packLabel(2, 2, 3));
}

TEST_CASE("label equals floodFillLabel on random masks") {
  Rng rng(36);
  for (int i = 0; i < 60; ++i) {
    double density = 0.1 + rng.unit() * 0.8;
    ImageBuffer start = randomMask(64, 64, density, rng);
    ImageBuffer fast = label(start, {}, pool());
    ImageBuffer ref = ccl::floodFillLabel(start);
    REQUIRE_MESSAGE(fast == ref, "mask ", i, " density ", density);
  }
}

TEST_CASE("reconnect interval 16 is accepted and agrees") {
  Rng rng(37);
  CclConfig k16;
  k16.reconnectInterval = 16;
  for (int i = 0; i < 10; ++i) {
    ImageBuffer start = randomMask(48, 48, 0.5, rng);
    CHECK(label(start, k16, pool()) == ccl::floodFillLabel(start));
  }
  CclConfig bad;
  bad.reconnectInterval = 0;
  CHECK_THROWS_AS(label(mask("x"), bad, pool()), RunError);
}

TEST_CASE("labelling outcome is scheduling independent") {
  WorkerPool p1(1), p4(4);
  Rng rng(38);
  for (int i = 0; i < 15; ++i) {
    ImageBuffer start = randomMask(40, 40, 0.55, rng);
    CHECK(label(start, {}, p1) == label(start, {}, p4));
  }
}

TEST_CASE("max-rounds guard aborts with a diagnostic") {
  ImageBuffer start(16, 1, PixelKind::Bool);
  for (auto& v : start.boolData()) v = 1;
  CclConfig cfg;
  cfg.reconnectInterval = 1;
  cfg.maxRounds = 1;
  CHECK_THROWS_WITH_AS(label(start, cfg, pool()), doctest::Contains("max-rounds"), RunError);
}

TEST_CASE("floodFillLabel canonical form") {
  ImageBuffer start = mask("x.x/.../x.x");
  ImageBuffer l = ccl::floodFillLabel(start);
  CHECK(l.labelAt(0, 0) == packLabel(0, 0, 3));
  CHECK(l.labelAt(2, 2) == packLabel(2, 2, 3));
  CHECK(l.labelAt(1, 1) == kNullLabel);
  // Moore adjacency joins diagonals: a checkerboard is one component.
  ImageBuffer checkerStart(8, 8, PixelKind::Bool);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      checkerStart.boolData()[checkerStart.idx(r, c)] = (r + c) % 2 == 0 ? 1 : 0;
  ImageBuffer cl = ccl::floodFillLabel(checkerStart);
  uint32_t expect = packLabel(7, 7, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      if ((r + c) % 2 == 0) CHECK(cl.labelAt(r, c) == expect);
}

TEST_SUITE_END();
