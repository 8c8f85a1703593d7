// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "gita/cli.hpp"

int main(int argc, char** argv) {
    return gita::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
