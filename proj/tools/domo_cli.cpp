#include <iostream>

#include "domo/cli.hpp"

int main(int argc, char** argv) { return domo::cli::run(argc, argv, std::cout, std::cerr); }
