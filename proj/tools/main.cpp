#include <iostream>

#include "polyflood/cli.hpp"

int main(int argc, char** argv) { return polyflood::run_cli(argc, argv, std::cout, std::cerr); }
