#include <iostream>
#include <string>
#include <vector>

#include "bergman/experiment.h"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return bergman::run_cli(args, std::cout, std::cerr);
}
