#include "stlat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return stlat::cli::run(argc, argv, std::cout, std::cerr); }
