#include <iostream>
#include <string>
#include <vector>

#include "decaylab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return decaylab::cli::run(args, std::cout, std::cerr);
}
