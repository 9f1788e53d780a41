#include <iostream>

#include "vmorl/cli/commands.hpp"

int main(int argc, char** argv) { return vmorl::cli::run_cli(argc, argv, std::cout, std::cerr); }
