#include <iostream>

#include "qpol/cli.hpp"

int main(int argc, char** argv) { return qpol::cli::run(argc, argv, std::cout, std::cerr); }
