#include <iostream>

#include "entweb/cli.hpp"

int main(int argc, char **argv) { return entweb::cli::run(argc, argv, std::cout, std::cerr); }
