#include <iostream>

#include "lie2/cli.hpp"

int main(int argc, char** argv) {
  return lie2::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
