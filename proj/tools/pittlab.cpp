#include <iostream>

#include "pittlab/cli/app.hpp"

int main(int argc, char** argv) { return pittlab::cli::run(argc, argv, std::cout, std::cerr); }
