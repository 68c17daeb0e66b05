#include <iostream>
#include <string>
#include <vector>

#include "xigap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return xigap::run_cli(args, std::cout, std::cerr);
}
