#include <iostream>

#include "compass/facade.hpp"

int main(int argc, char** argv) {
  return compass::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
