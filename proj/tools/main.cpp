#include <vector>

#include "pixlog/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pixlog::cliMain(args);
}
