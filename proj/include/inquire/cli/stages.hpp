// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "inquire/cli/run_dir.hpp"
#include "inquire/core/config.hpp"
#include "inquire/core/errors.hpp"
#include "inquire/eval/grading.hpp"

namespace inquire::cli {

struct StageOptions {
  std::optional<int> max_problems;  // run at most this many pending units, then stop
  bool use_filtered = false;        // read datasets/filtered_problems.jsonl instead of the config's set
  std::vector<fs::path> overlay_runs;
  std::optional<fs::path> export_dir;
};

struct StageOutcome {
  int ran = 0;
  int reused = 0;
  int failed = 0;
  int deferred = 0;
  std::vector<std::string> diagnostics;

  bool ok() const { return failed == 0; }
};

/// A stage precondition that does not hold (missing upstream artifacts).
/// Maps to exit status 1.
class StageError : public Error {
 public:
  using Error::Error;
};

StageOutcome run_filter(const RunConfig& cfg, const StageOptions& opt, std::ostream& log);
StageOutcome run_interact(const RunConfig& cfg, const StageOptions& opt, std::ostream& log);
StageOutcome run_sweep(const RunConfig& cfg, const StageOptions& opt, std::ostream& log);
StageOutcome run_collect(const RunConfig& cfg, const StageOptions& opt, std::ostream& log);
StageOutcome run_export(const RunConfig& cfg, const StageOptions& opt, std::ostream& log);
StageOutcome run_judge(const RunConfig& cfg, const StageOptions& opt, std::ostream& log);
StageOutcome run_report(const RunConfig& cfg, const StageOptions& opt, std::ostream& log);

/// Structural check of a run dir: transcripts, curves, datasets and the
/// manifest's completeness claims. Each entry names the file and the
/// violated invariant.
std::vector<std::string> validate_run(const fs::path& run_dir);

std::string serialize_curve(const std::vector<eval::EvalRecord>& curve);
std::vector<eval::EvalRecord> parse_curve(std::string_view text);  // ParseError with line numbers

}  // namespace inquire::cli
