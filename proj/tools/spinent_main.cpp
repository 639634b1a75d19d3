// spinent_main.cpp — Command-line entry point

#include <iostream>

#include "spinent/cli/commands.hpp"

int main(int argc, char** argv) { return spinent::cli::cli_main(argc, argv, std::cout, std::cerr); }
