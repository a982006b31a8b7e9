#include <iostream>
#include <string>
#include <vector>

#include "basel/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return basel::cli::run(args, std::cout, std::cerr);
}
