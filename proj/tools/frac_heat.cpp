#include <iostream>

#include "frac_heat/cli.hpp"

int main(int argc, char** argv) { return frac_heat::cli::run_cli(argc, argv, std::cout, std::cerr); }
