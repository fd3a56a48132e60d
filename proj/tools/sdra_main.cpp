#include <iostream>
#include <string>
#include <vector>

#include "sdra/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sdra::cli::run(args, std::cout, std::cerr);
}
