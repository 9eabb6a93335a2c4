#include <iostream>

#include "eulerfv/cli.hpp"

int main(int argc, char** argv) { return eulerfv::run_cli(argc, argv, std::cout, std::cerr); }
