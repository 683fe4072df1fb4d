#include "twisted/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return twisted::run_cli(argc, argv, std::cout, std::cerr); }
