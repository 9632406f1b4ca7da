#include <iostream>

#include "divfan/cli.hpp"

int main(int argc, char** argv) { return divfan::cli::run(argc, argv, std::cout, std::cerr); }
