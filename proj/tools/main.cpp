#include <iostream>
#include <string>
#include <vector>

#include "rvp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rvp::run_cli(args, std::cout, std::cerr);
}
