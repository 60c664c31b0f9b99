#include <iostream>

#include "fsweep/cli.hpp"

int main(int argc, char** argv) { return fsweep::cli::run(argc, argv, std::cout, std::cerr); }
