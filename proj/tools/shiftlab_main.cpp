#include <iostream>

#include "shiftlab/cli.hpp"

int main(int argc, char** argv) {
  return shiftlab::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
