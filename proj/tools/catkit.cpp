#include <iostream>

#include "catkit/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const int status = catkit::run(args, std::cout);
  std::cout.flush();
  return status;
}
