#include <iostream>

#include "lsii/cli.hpp"

int main(int argc, char** argv) { return lsii::cli::run_cli(argc, argv, std::cout, std::cerr); }
