#include <iostream>

#include "grassgeo/cli.hpp"

int main(int argc, char** argv) {
  return grassgeo::cli::run_cli(argc, argv, std::cout, std::cerr);
}
