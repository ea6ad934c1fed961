#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return s3e::cli::run(argc, argv, std::cout, std::cerr); }
