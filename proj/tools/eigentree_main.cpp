#include <iostream>
#include <string>
#include <vector>

#include "eigentree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eigentree::cli::dispatch(args, std::cout, std::cerr);
}
