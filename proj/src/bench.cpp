#include "pixlog/bench.hpp"

#include <cmath>
#include <cstdio>

#include "pixlog/executor.hpp"
#include "pixlog/formula_gen.hpp"
#include "pixlog/parser.hpp"
#include "pixlog/png_io.hpp"
#include "pixlog/synth.hpp"
#include "pixlog/task_graph.hpp"

namespace pixlog {
namespace bench {

namespace fs = std::filesystem;

BenchRow measure(const BenchSpec& spec, int repetitions, const fs::path& workDir) {
  fs::create_directories(workDir);

  std::string text;
  std::string outputName;
  if (spec.kind == BenchSpec::Kind::Sequential) {
    auto img = synth::generate(synth::ImageKind::BlobNoise, spec.width, spec.height, spec.seed);
    savePng(workDir / "input.png", Value::image(std::move(img)));
    text = gen::sequentialFormula(spec.size, spec.seed);
    outputName = "sequential-out.png";
  } else {
    auto a = synth::generate(synth::ImageKind::BlobNoise, spec.width, spec.height, spec.seed);
    auto b = synth::generate(synth::ImageKind::Checker, spec.width, spec.height, spec.seed + 1);
    savePng(workDir / "input-a.png", Value::image(std::move(a)));
    savePng(workDir / "input-b.png", Value::image(std::move(b)));
    text = gen::randomFormula(spec.size, spec.seed);
    outputName = "random-out.png";
  }

  TaskGraph graph = expand(parseText(text));

  RunOptions options;
  options.workers = spec.workers;
  options.baseDir = workDir;
  options.log = [](const std::string&) {};  // timing runs stay quiet

  BenchRow row;
  row.spec = spec;
  row.tasks = graph.nodeCount();

  std::vector<double> times;
  times.reserve(size_t(repetitions));
  run(graph, options);  // warmup, not measured
  for (int i = 0; i < repetitions; ++i) times.push_back(run(graph, options).computationMs);

  double mean = 0;
  for (double t : times) mean += t;
  mean /= double(times.size());
  double var = 0;
  for (double t : times) var += (t - mean) * (t - mean);
  var = times.size() > 1 ? var / double(times.size() - 1) : 0.0;

  row.wallMsMean = mean;
  row.wallMsStddev = std::sqrt(var);
  row.outputChecksum = synth::checksum(loadPng(workDir / outputName).img());
  return row;
}

std::string csvHeader() { return "kind,size,seed,workers,tasks,wall_ms_mean,wall_ms_stddev\n"; }

std::string csvRow(const BenchRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%d,%llu,%d,%zu,%.3f,%.3f\n",
                row.spec.kind == BenchSpec::Kind::Sequential ? "sequential" : "random",
                row.spec.size, static_cast<unsigned long long>(row.spec.seed), row.spec.workers,
                row.tasks, row.wallMsMean, row.wallMsStddev);
  return buf;
}

std::string gnuplotScript(const std::string& csvPath) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 'formula size'\n";
  s += "set ylabel 'wall ms'\n";
  s += "plot '" + csvPath + "' using 2:6 with linespoints title 'mean wall ms'\n";
  return s;
}

}  // namespace bench
}  // namespace pixlog
