#include <iostream>
#include <string>
#include <vector>

#include "spectral4/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spectral4::main_entry(args, std::cout, std::cerr);
}
