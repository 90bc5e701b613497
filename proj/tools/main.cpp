#include <iostream>
#include <string>
#include <vector>

#include "pmfiber/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return pmfiber::cli::run(args, std::cout, std::cerr);
}
