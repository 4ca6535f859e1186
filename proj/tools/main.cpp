#include <iostream>
#include <string>
#include <vector>

#include "fock/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fock::cli::run_cli(args, std::cout, std::cerr);
}
