#include <iostream>

#include "moi/cli.hpp"

int main(int argc, char** argv) { return moi::cli::run(argc, argv, std::cout, std::cerr); }
