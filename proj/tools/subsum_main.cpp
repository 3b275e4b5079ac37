#include <iostream>

#include "subsum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return subsum::run_command(args, std::cout, std::cerr);
}
