#include <iostream>

#include "ldesc/cli.hpp"

int main(int argc, char** argv) { return ldesc::run_cli(argc, argv, std::cout, std::cerr); }
