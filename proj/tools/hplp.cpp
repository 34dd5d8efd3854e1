#include <iostream>

#include "hplp/cli.hpp"

int main(int argc, char** argv) { return hplp::cli::run(argc, argv, std::cout, std::cerr); }
