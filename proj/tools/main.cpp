#include <iostream>
#include <string>
#include <vector>

#include "strichartz/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return strichartz::cli::run(args, std::cout, std::cerr);
}
