#include <iostream>

#include "psbeatty/cli.hpp"

int main(int argc, char** argv) { return psb::cli::run(argc, argv, std::cout, std::cerr); }
