#include <iostream>
#include <string>
#include <vector>

#include "jrp/cli.hpp"

int main(int argc, char** argv) {
  return jrp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
