#include <iostream>

#include "apnkit/cli.hpp"

int main(int argc, char** argv) { return apnkit::cli::run(argc, argv, std::cout, std::cerr); }
