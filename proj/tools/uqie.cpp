#include <iostream>

#include "uqie/cli.hpp"

int main(int argc, char** argv) { return uqie::run_cli(argc, argv, std::cout, std::cerr); }
