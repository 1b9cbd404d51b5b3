#include "clk/cli.hpp"

#include <unistd.h>

#include <iostream>

int main(int argc, char** argv) {
  return clk::cli::run(argc, argv, std::cin, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
