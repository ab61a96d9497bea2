#include <iostream>
#include <string>
#include <vector>

#include "fibrato/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fibrato::run(args, std::cout, std::cerr);
}
