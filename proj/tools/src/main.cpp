#include <iostream>

#include "stlrobust/cli.hpp"

int main(int argc, char** argv) { return stlrobust::cli::run(argc, argv, std::cout, std::cerr); }
