#include <iostream>

#include "mpoly/cli.hpp"

int main(int argc, char** argv) { return mpoly::cli_main(argc, argv, std::cin, std::cout, std::cerr); }
