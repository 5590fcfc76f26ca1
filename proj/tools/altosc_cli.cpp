#include <iostream>

#include "altosc/cli.hpp"

int main(int argc, char** argv) { return altosc::cli::main(argc, argv, std::cout, std::cerr); }
