#include <iostream>

#include "vproblog/cli.hpp"

int main(int argc, char** argv) { return vpl::cli_main(argc, argv, std::cout, std::cerr); }
