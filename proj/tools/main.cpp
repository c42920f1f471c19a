#include <iostream>

#include "srp_cli/cli.hpp"

int main(int argc, char** argv) { return srp::cli::run(argc, argv, std::cout, std::cerr); }
