#include <iostream>
#include <string>
#include <vector>

#include "lqham/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lqham::run_cli(args, std::cout, std::cerr);
}
