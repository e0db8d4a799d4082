#include <iostream>

#include "modext/cli.hpp"

int main(int argc, char** argv) { return modext::cli::run(argc, argv, std::cout, std::cerr); }
