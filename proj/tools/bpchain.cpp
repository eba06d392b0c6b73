#include "bpchain/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bpchain::run_cli(argc, argv, std::cout, std::cerr); }
