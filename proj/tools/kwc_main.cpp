#include <string>
#include <vector>

#include "kwc/config.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kwc::run_cli(args);
}
