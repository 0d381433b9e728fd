#include <string>
#include <vector>

#include "densim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return densim::run_cli(std::move(args));
}
