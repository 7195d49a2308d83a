// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "starnoma/cli.hpp"

int main(int argc, char** argv) { return starnoma::cli_main(argc, argv, std::cout, std::cerr); }
