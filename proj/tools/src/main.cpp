#include <iostream>
#include <string>
#include <vector>

#include "shifteq_tools/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return shifteq::tools::run(args, std::cout, std::cerr);
}
