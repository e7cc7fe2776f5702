#include <iostream>

#include "asymptolim/cli.hpp"

int main(int argc, char** argv) {
  return asymptolim::cli::main_entry(argc, argv, std::cout, std::cerr);
}
