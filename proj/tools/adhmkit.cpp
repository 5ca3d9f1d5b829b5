#include <iostream>

#include "adhmkit/cli.hpp"

int main(int argc, char** argv) { return adhmkit::cli::run(argc, argv, std::cout, std::cerr); }
