#include <iostream>

#include "tempora/cli.hpp"

int main(int argc, char** argv) {
  return tempora::cli_main(argc, argv, std::cout, std::cerr);
}
