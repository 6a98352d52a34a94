#include <iostream>

#include "kg2/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kg2::run(args, std::cout, std::cerr);
}
