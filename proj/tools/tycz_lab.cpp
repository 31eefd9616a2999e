#include <iostream>

#include "tycz/cli.hpp"

int main(int argc, char** argv) { return tycz::run_cli(argc, argv, std::cout, std::cerr); }
