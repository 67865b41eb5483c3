#include <iostream>

#include "bhawkes/cli.hpp"

int main(int argc, char** argv) { return bhawkes::run_cli(argc, argv, std::cout, std::cerr); }
