// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "inquire/core/config.hpp"
#include "inquire/core/types.hpp"

namespace inquire::eval {

struct ExecutionResult {
  int exit_code = -1;    // valid when !signaled && !timed_out
  int term_signal = 0;   // signal number when signaled
  bool signaled = false;
  bool timed_out = false;
  double wall_seconds = 0.0;
  std::string stdout_text;  // truncated to a bounded tail
  std::string stderr_text;
  bool network_namespace = false;  // false: fell back to the interpreter-level socket guard
};

/// Runs `program` (written to `solution.py` inside a fresh temp dir, which is
/// the working directory) with `limits.interpreter` as argv prefix.
///
/// The child gets its own process group, an address-space cap, a file-size
/// cap, no stdin and, when `deny_network`, an empty network namespace. On
/// timeout the whole group is SIGKILLed. Throws ConfigError when the
/// interpreter cannot be found or executed.
ExecutionResult execute_program(std::string_view program, const SandboxLimits& limits);

/// Candidate source, two blank lines, then the canonical tests. A HumanEval
/// style `def check(candidate)` that is never invoked gets a trailing
/// `check(<entry_point>)`.
std::string compose_program(std::string_view source, const CodingGold& gold);

}  // namespace inquire::eval
