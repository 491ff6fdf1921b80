#include <iostream>

#include "sageev/cli.hpp"

int main(int argc, char** argv) { return sageev::cli::run(argc, argv, std::cout, std::cerr); }
