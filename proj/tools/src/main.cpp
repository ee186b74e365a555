#include <iostream>

#include "ptdyn_cli/app.hpp"

int main(int argc, char** argv) { return ptdyn::cli::run_main(argc, argv, std::cout, std::cerr); }
