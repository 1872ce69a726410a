#include "bhcone/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bhcone::run_cli(argc, argv, std::cout, std::cerr); }
