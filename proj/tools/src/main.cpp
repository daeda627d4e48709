#include <iostream>
#include <string>
#include <vector>

#include "advgrasp_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return advgrasp::cli::run(args, std::cout, std::cerr);
}
