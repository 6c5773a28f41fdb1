#include <iostream>

#include "polycs/cli.hpp"

int main(int argc, char** argv) { return polycs::cli::run(argc, argv, std::cout, std::cerr); }
