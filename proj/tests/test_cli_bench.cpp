#include <doctest.h>

#include <fstream>
#include <set>

#include "oracles.hpp"
#include "pixlog/bench.hpp"
#include "pixlog/ccl.hpp"
#include "pixlog/cli.hpp"
#include "pixlog/formula_gen.hpp"
#include "pixlog/parser.hpp"
#include "pixlog/png_io.hpp"
#include "pixlog/synth.hpp"
#include "pixlog/task_graph.hpp"

using namespace pixlog;
using testing::TempDir;

namespace {

ImageBuffer maskFromU16(const ImageBuffer& u16) {
  ImageBuffer m(u16.width(), u16.height(), PixelKind::Bool);
  for (size_t i = 0; i < u16.pixelCount(); ++i)
    m.boolData()[i] = u16.u16Data()[i] != 0 ? 1 : 0;
  return m;
}

size_t countLines(const std::string& s) {
  size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE_BEGIN("cli-bench");

TEST_CASE("sequential formula generator") {
  SUBCASE("depth 1 is a single near over the load") {
    std::string text = gen::sequentialFormula(1, 7);
    CHECK(text.find("load x = \"input.png\"") != std::string::npos);
    CHECK(text.find("save \"sequential-out.png\" near(x)") != std::string::npos);
  }
  SUBCASE("same seed twice gives identical text") {
    CHECK(gen::sequentialFormula(13, 5) == gen::sequentialFormula(13, 5));
  }
  SUBCASE("graph has depth + 2 nodes") {
    for (int depth : {0, 1, 5, 64}) {
      TaskGraph g = expand(parseText(gen::sequentialFormula(depth, 1)));
      CHECK(g.nodeCount() == size_t(depth) + 2);
    }
  }
  SUBCASE("generated text always parses") {
    for (int depth : {0, 3, 17}) CHECK_NOTHROW(expand(parseText(gen::sequentialFormula(depth, 2))));
  }
}

TEST_CASE("random formula generator") {
  SUBCASE("size 1 is a bare threshold") {
    std::string text = gen::randomFormula(1, 3);
    TaskGraph g = expand(parseText(text));
    size_t cmp = g.countOpcode(">.") + g.countOpcode(">=.") + g.countOpcode("<.") +
                 g.countOpcode("<=.");
    CHECK(cmp == 1);
  }
  SUBCASE("deterministic and parseable across sizes") {
    Rng rng(71);
    for (int i = 0; i < 30; ++i) {
      int size = 1 + int(rng.below(40));
      uint64_t seed = rng.next();
      std::string a = gen::randomFormula(size, seed);
      CHECK(a == gen::randomFormula(size, seed));
      TaskGraph g = expand(parseText(a));
      // operator nodes never exceed the requested size (consing may shrink)
      size_t ops = 0;
      for (const Task& t : g.nodes())
        if (t.opcode != "load" && t.opcode != "save" && t.opcode != "const") ++ops;
      CHECK(ops <= size_t(size));
      CHECK(g.countOpcode("load") == 2);
    }
  }
}

TEST_CASE("checker fixture") {
  ImageBuffer img = synth::generate(synth::ImageKind::Checker, 2, 2, 0);
  auto px = img.u16Data();
  CHECK(px[0] == 65535);
  CHECK(px[1] == 0);
  CHECK(px[2] == 0);
  CHECK(px[3] == 65535);
}

TEST_CASE("blob-noise fixture bands and determinism") {
  synth::BlobNoiseInfo info;
  ImageBuffer img = synth::generate(synth::ImageKind::BlobNoise, 64, 64, 1, &info);
  CHECK(!info.discPixels.empty());
  CHECK(!info.haloPixels.empty());
  CHECK(!info.saltPixels.empty());
  for (size_t i : info.discPixels) CHECK(img.u16Data()[i] > 62258);
  for (size_t i : info.haloPixels) {
    CHECK(img.u16Data()[i] > 56360);
    CHECK(img.u16Data()[i] <= 62258);
  }
  for (size_t i : info.saltPixels) {
    CHECK(img.u16Data()[i] > 56360);
    CHECK(img.u16Data()[i] <= 62258);
  }
  // Deterministic generation for a fixed seed.
  ImageBuffer again = synth::generate(synth::ImageKind::BlobNoise, 64, 64, 1);
  CHECK(img == again);
  CHECK(synth::checksum(img) == synth::checksum(again));
  ImageBuffer other = synth::generate(synth::ImageKind::BlobNoise, 64, 64, 2);
  CHECK(synth::checksum(img) != synth::checksum(other));
}

TEST_CASE("spiral is one connected component") {
  WorkerPool pool(2);
  ImageBuffer img = synth::generate(synth::ImageKind::Spiral, 160, 160, 1);
  ImageBuffer m = maskFromU16(img);
  ImageBuffer labels = ccl::floodFillLabel(m);
  std::set<uint32_t> distinct;
  for (uint32_t v : labels.labelData())
    if (v != kNullLabel) distinct.insert(v);
  CHECK(distinct.size() == 1);
  CHECK(ccl::label(m, {}, pool) == labels);
}

TEST_CASE("concave-corner fixture exercises reconnect") {
  WorkerPool pool(2);
  ImageBuffer img = synth::generate(synth::ImageKind::ConcaveCorner, 48, 48, 1);
  ImageBuffer m = maskFromU16(img);
  ccl::CclStats stats;
  ImageBuffer labels = ccl::label(m, {}, pool, &stats);
  CHECK(labels == ccl::floodFillLabel(m));
  CHECK(stats.reconnectWrites >= 1);
}

TEST_CASE("bench rows") {
  TempDir dir;
  SUBCASE("depth 0 still yields a row") {
    bench::BenchSpec spec;
    spec.size = 0;
    spec.width = 16;
    spec.height = 16;
    bench::BenchRow row = bench::measure(spec, 2, dir.path / "b0");
    CHECK(row.tasks == 2);
    std::string csv = bench::csvHeader() + bench::csvRow(row);
    CHECK(countLines(csv) == 2);
    CHECK(csv.find("sequential,0,") != std::string::npos);
  }
  SUBCASE("task counts follow depth + 2") {
    for (int depth : {4, 8}) {
      bench::BenchSpec spec;
      spec.size = depth;
      spec.width = 16;
      spec.height = 16;
      bench::BenchRow row = bench::measure(spec, 1, dir.path / ("b" + std::to_string(depth)));
      CHECK(row.tasks == size_t(depth) + 2);
      CHECK(row.wallMsMean >= 0.0);
    }
  }
  SUBCASE("worker count changes neither tasks nor output") {
    bench::BenchSpec one;
    one.size = 6;
    one.width = 24;
    one.height = 24;
    bench::BenchSpec two = one;
    two.workers = 2;
    bench::BenchRow r1 = bench::measure(one, 1, dir.path / "w1");
    bench::BenchRow r2 = bench::measure(two, 1, dir.path / "w2");
    CHECK(r1.tasks == r2.tasks);
    CHECK(r1.outputChecksum == r2.outputChecksum);
  }
  SUBCASE("gnuplot helper mentions the csv") {
    CHECK(bench::gnuplotScript("bench.csv").find("bench.csv") != std::string::npos);
  }
}

TEST_CASE("cli: gen-image and gen-formula") {
  TempDir dir;
  auto out = (dir.path / "img.png").string();
  CHECK(cliMain({"gen-image", "--kind", "checker", "--width", "4", "--height", "4", "--out",
                 out}) == 0);
  Value v = loadPng(out);
  CHECK(v.img().width() == 4);
  CHECK(cliMain({"gen-image", "--kind", "nope", "--out", out}) == 2);

  auto spec = (dir.path / "f.imgql").string();
  CHECK(cliMain({"gen-formula", "--kind", "sequential", "--size", "3", "--out", spec}) == 0);
  CHECK(slurp(spec).find("near") != std::string::npos);
}

TEST_CASE("cli: run path exit codes") {
  TempDir dir;
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream(dir.path / name) << content;
    return (dir.path / name).string();
  };

  SUBCASE("empty file runs cleanly with no outputs") {
    CHECK(cliMain({write("empty.imgql", "// nothing\n")}) == 0);
  }
  SUBCASE("missing spec file") { CHECK(cliMain({(dir.path / "gone.imgql").string()}) == 1); }
  SUBCASE("syntax error") { CHECK(cliMain({write("bad.imgql", "let = 3\n")}) == 1); }
  SUBCASE("unbound identifier") {
    CHECK(cliMain({write("unbound.imgql", "save \"o.png\" nosuch\n")}) == 1);
  }
  SUBCASE("runtime error: missing input") {
    CHECK(cliMain({write("run.imgql", "load x = \"absent.png\"\nsave \"o.png\" near(x)\n")}) ==
          2);
  }
  SUBCASE("end-to-end run with stdlib, dag dump and json report") {
    ImageBuffer img = synth::generate(synth::ImageKind::BlobNoise, 48, 48, 3);
    savePng(dir.path / "input.png", Value::image(std::move(img)));
    auto spec = write("seg.imgql",
                      "load img = \"input.png\"\n"
                      "let hI = intensity(img) >. 62258\n"
                      "let vI = intensity(img) >. 56360\n"
                      "save \"seg.png\" grow(hI,vI)\n");
    auto report = (dir.path / "report.json").string();
    CHECK(cliMain({spec, "--workers", "2", "--dump-dag", "--json-report", report}) == 0);
    CHECK(std::filesystem::exists(dir.path / "seg.png"));
    CHECK(std::filesystem::exists(report));
    CHECK(slurp(report).find("\"tasks\"") != std::string::npos);
  }
  SUBCASE("stdlib override") {
    auto lib = write("mylib.imgql", "let inv(a) = !a\n");
    ImageBuffer m = testing::mask("x./..");
    savePng(dir.path / "m.png", Value::image(std::make_shared<const ImageBuffer>(m)));
    auto spec = write("useinv.imgql", "load x = \"m.png\"\nsave \"o.png\" inv(x)\n");
    CHECK(cliMain({spec, "--stdlib", lib}) == 0);
    // grow comes from the default stdlib, so it is now unbound.
    auto spec2 = write("usegrow.imgql", "load x = \"m.png\"\nsave \"p.png\" grow(x,x)\n");
    CHECK(cliMain({spec2, "--stdlib", lib}) == 1);
  }
}

TEST_SUITE_END();
