#include <iostream>
#include <string>
#include <vector>

#include "packdens/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return packdens::run_cli(args, std::cin, std::cout, std::cerr);
}
