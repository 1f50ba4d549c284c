#include <iostream>

#include "omegarl/cli.hpp"

int main(int argc, char** argv) { return omegarl::run_cli(argc, argv, std::cout, std::cerr); }
