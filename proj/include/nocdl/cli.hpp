// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nocdl {

// Parses and runs one command-line invocation (args excludes the program
// name). Exit codes: 0 deadlock-free / success, 1 deadlock, 2 input or
// usage error, 3 property violation (verify), 4 oracle resource cap.
int run_command(std::vector<std::string> args, std::istream& in,
                std::ostream& out, std::ostream& err);

}  // namespace nocdl
