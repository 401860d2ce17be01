#include <iostream>

#include "expcensus/cli.hpp"

int main(int argc, char** argv) { return expcensus::run_cli(argc, argv, std::cout, std::cerr); }
