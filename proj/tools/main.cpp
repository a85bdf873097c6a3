#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return digisurf::cli::run(argc, argv, {std::cin, std::cout, std::cerr});
}
