#include <iostream>

#include "hhardy/cli.hpp"

int main(int argc, char **argv) { return hh::cli_main(argc, argv, std::cout, std::cerr); }
