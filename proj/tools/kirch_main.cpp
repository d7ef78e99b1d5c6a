#include <iostream>

#include "kirch/cli.hpp"

int main(int argc, char** argv) {
  return kirch::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
