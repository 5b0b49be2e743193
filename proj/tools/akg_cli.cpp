#include <iostream>

#include "akg/cli.hpp"

int main(int argc, char** argv) { return akg::cli::run(argc, argv, std::cout, std::cerr); }
