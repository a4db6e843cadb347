#include <iostream>

#include "cotwist/cli.hpp"

int main(int argc, char** argv) { return cotwist::run_cli(argc, argv, std::cout, std::cerr); }
