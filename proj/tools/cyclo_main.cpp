#include "cyclo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cyclo::run(argc, argv, std::cout, std::cerr); }
