#include <iostream>
#include <string>
#include <vector>

#include "edcnc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return edcnc::cli::run(args, std::cout, std::cerr);
}
