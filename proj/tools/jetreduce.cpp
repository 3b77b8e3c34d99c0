#include <iostream>

#include "jetreduce/cli.hpp"

int main(int argc, char** argv) { return jetreduce::cli::main(argc, argv, std::cout, std::cerr); }
