#include <iostream>

#include "qhg/cli.hpp"

int main(int argc, char** argv) { return qhg::run_cli(argc, argv, std::cout, std::cerr); }
