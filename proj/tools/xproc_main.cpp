#include <iostream>

#include "xproc/cli.hpp"

int main(int argc, char** argv) { return xproc::run_command_line(argc, argv, std::cout, std::cerr); }
