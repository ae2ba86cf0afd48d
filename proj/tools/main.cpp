#include <iostream>

#include "moframe/cli.hpp"

int main(int argc, char** argv) { return moframe::cli::run(argc, argv, std::cout, std::cerr); }
