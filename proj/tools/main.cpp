#include <iostream>

#include "sublinear/cli.hpp"

int main(int argc, char** argv) { return sublinear::cli::run(argc, argv, std::cout, std::cerr); }
