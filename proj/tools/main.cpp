#include <iostream>
#include <string>
#include <vector>

#include "kresling/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kresling::run_command(args, std::cout, std::cerr);
}
