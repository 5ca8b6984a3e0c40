#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pixlog {
namespace bench {

struct BenchSpec {
  enum class Kind { Sequential, Random };
  Kind kind = Kind::Sequential;
  int size = 1;  // chain depth or operator count
  uint64_t seed = 1;
  int width = 256;
  int height = 256;
  int workers = 1;
};

struct BenchRow {
  BenchSpec spec;
  size_t tasks = 0;
  double wallMsMean = 0;
  double wallMsStddev = 0;
  uint64_t outputChecksum = 0;  // checksum of the formula's saved image
};

// Generates the formula and its input images under workDir, expands once and
// runs it `repetitions` times, timing the computation phase of each run.
BenchRow measure(const BenchSpec& spec, int repetitions, const std::filesystem::path& workDir);

std::string csvHeader();
std::string csvRow(const BenchRow& row);

// gnuplot script plotting wall time against formula size for a CSV file.
std::string gnuplotScript(const std::string& csvPath);

}  // namespace bench
}  // namespace pixlog
