// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "nocdl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nocdl::run_command(std::move(args), std::cin, std::cout, std::cerr);
}
