#include <iostream>
#include <string>
#include <vector>

#include "septree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return septree::run_cli(args, std::cout, std::cerr);
}
