#include "pixlog/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pixlog/bench.hpp"
#include "pixlog/executor.hpp"
#include "pixlog/formula_gen.hpp"
#include "pixlog/parser.hpp"
#include "pixlog/png_io.hpp"
#include "pixlog/stdlib_text.hpp"
#include "pixlog/synth.hpp"
#include "pixlog/task_graph.hpp"

namespace pixlog {

namespace fs = std::filesystem;

namespace {

constexpr const char* kBuiltinStdlib = "<builtin-stdlib>";

// File resolver that also serves the embedded standard library.
class CliImportResolver : public FileImportResolver {
 public:
  explicit CliImportResolver(std::string baseDir) : FileImportResolver(std::move(baseDir)) {}

  std::string canonicalKey(const std::string& path) override {
    if (path == kBuiltinStdlib) return path;
    return FileImportResolver::canonicalKey(path);
  }

  Program load(const std::string& path) override {
    if (path == kBuiltinStdlib) return parseText(kStdlibText);
    return FileImportResolver::load(path);
  }
};

std::string readFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(SpecError::Stage::Parse, "cannot open file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFileOrStdout(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RunError("cannot open file for writing: " + path);
  out << content;
}

int runSpec(const std::string& specFile, int workers, int reconnectInterval, bool dumpDag,
            const std::string& jsonReport, const std::string& stdlibPath, bool debugCcl) {
  fs::path spec(specFile);
  fs::path baseDir = spec.has_parent_path() ? spec.parent_path() : fs::path(".");

  TaskGraph graph;
  try {
    Program program;
    program.emplace_back(
        ImportCmd{stdlibPath.empty() ? std::string(kBuiltinStdlib) : stdlibPath, SourcePos{}});
    Program user = parseText(readFile(spec));
    for (auto& cmd : user) program.emplace_back(std::move(cmd));
    CliImportResolver resolver(baseDir.string());
    graph = expand(program, &resolver);
  } catch (const SpecError& e) {
    std::fprintf(stderr, "%s: %s\n", specFile.c_str(), e.what());
    return 1;
  }

  if (dumpDag) std::fputs(graph.dump().c_str(), stdout);

  RunOptions options;
  options.workers = workers;
  options.ccl.reconnectInterval = reconnectInterval;
  options.baseDir = baseDir;
  if (debugCcl) options.debugCclDir = fs::path("ccl-debug");

  try {
    RunReport report = run(graph, options);
    if (!jsonReport.empty()) {
      std::ofstream out(jsonReport, std::ios::binary);
      if (!out) throw RunError("cannot write report: " + jsonReport);
      out << report.toJson() << "\n";
    }
  } catch (const RunError& e) {
    std::fprintf(stderr, "%s: %s\n", specFile.c_str(), e.what());
    return 2;
  }
  return 0;
}

}  // namespace

int cliMain(const std::vector<std::string>& args) {
  CLI::App app{"Spatial model checker for 2D images"};
  app.require_subcommand(0, 1);

  std::string specFile;
  int workers = 0;
  int reconnectInterval = 8;
  bool dumpDag = false;
  bool debugCcl = false;
  std::string jsonReport, stdlibPath;
  app.add_option("specfile", specFile, "imgql specification to execute");
  app.add_option("--workers", workers, "worker threads (default: hardware concurrency)");
  app.add_option("--reconnect-interval", reconnectInterval,
                 "main iterations between reconnect passes (default 8)");
  app.add_flag("--dump-dag", dumpDag, "print the task graph, one node per line");
  app.add_option("--json-report", jsonReport, "write a machine-readable run report");
  app.add_option("--stdlib", stdlibPath, "replace the built-in standard library");
  app.add_flag("--debug-ccl", debugCcl,
               "dump per-iteration label images to ccl-debug/ as coloured PNGs");

  auto* genImage = app.add_subcommand("gen-image", "generate a synthetic 16-bit PNG");
  std::string giKind = "blob-noise", giOut = "out.png";
  int giW = 64, giH = 64;
  uint64_t giSeed = 1;
  genImage->add_option("--kind", giKind, "blob-noise | spiral | checker | concave-corner");
  genImage->add_option("--width", giW)->check(CLI::PositiveNumber);
  genImage->add_option("--height", giH)->check(CLI::PositiveNumber);
  genImage->add_option("--seed", giSeed);
  genImage->add_option("--out", giOut, "output PNG path");

  auto* genFormula = app.add_subcommand("gen-formula", "generate a benchmark specification");
  std::string gfKind = "sequential", gfOut;
  int gfSize = 16;
  uint64_t gfSeed = 1;
  genFormula->add_option("--kind", gfKind, "sequential | random");
  genFormula->add_option("--size", gfSize, "chain depth / operator count")
      ->check(CLI::NonNegativeNumber);
  genFormula->add_option("--seed", gfSeed);
  genFormula->add_option("--out", gfOut, "output path (default stdout)");

  auto* benchCmd = app.add_subcommand("bench", "run the formula scaling benchmark");
  std::string bKind = "sequential", bOut, bGnuplot;
  std::vector<int> bSizes{64, 128, 256};
  uint64_t bSeed = 1;
  int bReps = 3, bW = 256, bH = 256, bWorkers = 1;
  benchCmd->add_option("--kind", bKind, "sequential | random");
  benchCmd->add_option("--sizes", bSizes, "formula sizes to measure")->delimiter(',');
  benchCmd->add_option("--seed", bSeed);
  benchCmd->add_option("--reps", bReps)->check(CLI::PositiveNumber);
  benchCmd->add_option("--width", bW)->check(CLI::PositiveNumber);
  benchCmd->add_option("--height", bH)->check(CLI::PositiveNumber);
  benchCmd->add_option("--workers", bWorkers)->check(CLI::PositiveNumber);
  benchCmd->add_option("--out", bOut, "CSV output path (default stdout)");
  benchCmd->add_option("--gnuplot", bGnuplot, "also write a gnuplot script");

  std::vector<const char*> argv;
  argv.push_back("pixlog");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (genImage->parsed()) {
      auto img = synth::generate(synth::imageKindFromName(giKind), giW, giH, giSeed);
      savePng(giOut, Value::image(std::move(img)));
      std::printf("wrote %s (%dx%d %s, seed %llu)\n", giOut.c_str(), giW, giH, giKind.c_str(),
                  static_cast<unsigned long long>(giSeed));
      return 0;
    }
    if (genFormula->parsed()) {
      std::string text = gfKind == "random" ? gen::randomFormula(gfSize, gfSeed)
                                            : gen::sequentialFormula(gfSize, gfSeed);
      writeFileOrStdout(gfOut, text);
      return 0;
    }
    if (benchCmd->parsed()) {
      std::string csv = bench::csvHeader();
      for (int size : bSizes) {
        bench::BenchSpec spec;
        spec.kind = bKind == "random" ? bench::BenchSpec::Kind::Random
                                      : bench::BenchSpec::Kind::Sequential;
        spec.size = size;
        spec.seed = bSeed;
        spec.width = bW;
        spec.height = bH;
        spec.workers = bWorkers;
        csv += bench::csvRow(bench::measure(spec, bReps, fs::temp_directory_path() / "pixlog-bench"));
      }
      writeFileOrStdout(bOut, csv);
      if (!bGnuplot.empty())
        writeFileOrStdout(bGnuplot, bench::gnuplotScript(bOut.empty() ? "bench.csv" : bOut));
      return 0;
    }
  } catch (const RunError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  if (specFile.empty()) {
    std::fputs(app.help().c_str(), stderr);
    return 1;
  }
  return runSpec(specFile, workers, reconnectInterval, dumpDag, jsonReport, stdlibPath, debugCcl);
}

}  // namespace pixlog
