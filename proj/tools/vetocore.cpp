#include <iostream>
#include <string>
#include <vector>

#include "vetocore/cli.hpp"

int main(int argc, char** argv) {
  return vetocore::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
