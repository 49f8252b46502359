#include <iostream>

#include "probcf_cli/cli.hpp"

int main(int argc, char** argv) { return probcf::cli::run_cli(argc, argv, std::cout, std::cerr); }
