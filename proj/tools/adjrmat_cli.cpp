#include <iostream>

#include "adjrmat/cli.hpp"

int main(int argc, char** argv) { return adjrmat::run_cli(argc, argv, std::cout, std::cerr); }
