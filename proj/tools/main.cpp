#include <iostream>
#include <string>
#include <vector>

#include "crk/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return crk::run(args, std::cout, std::cerr);
}
