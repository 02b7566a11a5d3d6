#include <iostream>
#include <string>
#include <vector>

#include "pdem/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pdem::cli::run(args, std::cout, std::cerr);
}
