#include <iostream>
#include <string>
#include <vector>

#include "schwarz_atlas/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return schwarz_atlas::cli::dispatch(args, std::cout, std::cerr);
}
