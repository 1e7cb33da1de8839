#include <iostream>
#include <string>
#include <vector>

#include "boxarith/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return boxarith::cli::run(args, std::cout, std::cerr);
}
