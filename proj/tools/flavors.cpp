#include <iostream>

#include "flavors/cli.hpp"

int main(int argc, char** argv) { return flavors::cli::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
