#include <iostream>

#include "risjam/cli.hpp"

int main(int argc, char** argv) { return risjam::run_cli(argc, argv, std::cout, std::cerr); }
