#include <iostream>

#include "addmatch/cli.hpp"

int main(int argc, char** argv) {
  const auto r = addmatch::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.output;
  std::cerr << r.error;
  return r.exit_code;
}
