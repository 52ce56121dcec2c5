// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace inquire::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // stage failure, invalid run dir
inline constexpr int kExitUsage = 2;    // bad arguments or config

/// Entry point behind the `inquire` binary. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inquire::cli
