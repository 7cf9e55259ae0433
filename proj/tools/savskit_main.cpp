#include <iostream>

#include "savskit/cli.hpp"

int main(int argc, char** argv) {
  return savskit::cli::dispatch(argc, argv, std::cout, std::cerr);
}
