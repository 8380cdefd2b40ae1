#include <iostream>

#include "cubeharm/cli.hpp"

int main(int argc, char** argv) { return cubeharm::cli::run(argc, argv, std::cout, std::cerr); }
