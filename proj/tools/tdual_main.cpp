#include <iostream>
#include <vector>

#include "tdual/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const tdual::RunResult result = tdual::run(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.code;
}
