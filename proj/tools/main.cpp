#include <iostream>
#include <string>
#include <vector>

#include "hre/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hre::cli::run(args, std::cout, std::cerr);
}
