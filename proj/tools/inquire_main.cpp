// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "inquire/cli/cli.hpp"

int main(int argc, char** argv) {
  return inquire::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
