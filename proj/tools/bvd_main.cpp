#include <iostream>
#include <string>
#include <vector>

#include "bvd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bvd::cli::run_command(args, std::cout, std::cerr);
}
