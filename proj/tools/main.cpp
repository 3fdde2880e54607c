#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return catgate::cli::main_entry(argc, argv, std::cout, std::cerr); }
