// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inquire/core/problem_set.hpp"
#include "inquire/core/types.hpp"
#include "inquire/eval/grading.hpp"

namespace inquire::judge {

struct CurveSummary {
  std::string label;
  std::vector<double> mean_pass;  // index t-1
  std::vector<int> n_problems;    // problems contributing at each turn
  int total_problems = 0;
};

/// Per-turn mean pass over problems. `curves[i]` is one problem's records;
/// a problem contributes at turn t when it has a record for t.
CurveSummary summarize_curves(const std::string& label, const std::vector<std::vector<eval::EvalRecord>>& curves,
                              int n_turns);

struct TurnEfficiency {
  int saved = 0;
  bool reached = false;      // candidate reached the target at all
  double target = 0.0;       // reference's final-turn mean
  int reference_turn = 0;    // first turn the reference reaches its final value
  int candidate_turn = 0;    // first turn the candidate reaches it; 0 if never
};

/// Turns saved by `candidate` relative to `reference`: the first turn the
/// reference attains its final-turn value minus the first turn the candidate
/// attains it, floored at 0. With the reference first attaining its final
/// value at turn N this is N minus the candidate's turn. Unequal lengths are a
/// ContractError.
TurnEfficiency turn_efficiency(const std::vector<double>& reference, const std::vector<double>& candidate);

struct LeakFlag {
  std::string problem_id;
  std::int64_t turn_index = 0;
  Tag tag = Tag::answer;
  std::string kind;  // gold_integer | code_fence
  friend bool operator==(const LeakFlag&, const LeakFlag&) = default;
};

/// Teacher messages that state the math gold as a standalone integer or, for
/// coding, contain a fenced code block. Advisory only.
std::vector<LeakFlag> leak_audit(const std::vector<ConversationHistory>& transcripts, const ProblemSet& problems);

nlohmann::ordered_json to_json(const LeakFlag& f);

/// Student question texts in turn order (assessment messages skipped).
std::vector<std::string> student_questions(const ConversationHistory& h);

}  // namespace inquire::judge
