#include <iostream>

#include "gpage/cli.hpp"

int main(int argc, char** argv) { return gpage::cli::main_entry(argc, argv, std::cout, std::cerr); }
