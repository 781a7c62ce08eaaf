#include <string>
#include <vector>

#include "qbc/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qbc::cli::run(std::move(args));
}
