#include <iostream>
#include <vector>

#include "uniserial/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return uniserial::run(args, std::cout, std::cerr);
}
