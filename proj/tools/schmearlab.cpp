#include <iostream>

#include "schmearlab/cli.hpp"

int main(int argc, char** argv) { return schmearlab::cli_main(argc, argv, std::cout, std::cerr); }
