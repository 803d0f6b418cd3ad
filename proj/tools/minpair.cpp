#include <iostream>

#include "minpair/cli.hpp"

int main(int argc, char** argv) { return minpair::run_cli(argc, argv, std::cout, std::cerr); }
