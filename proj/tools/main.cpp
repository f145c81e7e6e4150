#include <iostream>

#include "maxeig/cli.hpp"

int main(int argc, char** argv) { return maxeig::run_cli(argc, argv, std::cout, std::cerr); }
