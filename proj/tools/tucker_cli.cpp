#include <iostream>

#include "tucker/cli.hpp"

int main(int argc, char** argv) { return tucker::run_cli(argc, argv, std::cout, std::cerr); }
