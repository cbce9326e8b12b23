#include <iostream>

#include "circinv/cli.hpp"

int main(int argc, char** argv) { return circinv::cli::run(argc, argv, std::cout, std::cerr); }
