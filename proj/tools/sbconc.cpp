#include <iostream>

#include "sbconc/cli.hpp"

int main(int argc, char** argv) { return sbconc::cli::run_cli(argc, argv, std::cout, std::cerr); }
