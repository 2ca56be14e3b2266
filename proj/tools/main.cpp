#include <string>
#include <vector>

#include "inscribe/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return inscribe::cli::run_command(args);
}
