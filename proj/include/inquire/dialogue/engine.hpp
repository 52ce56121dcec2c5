// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/config.hpp"
#include "inquire/core/types.hpp"
#include "inquire/eval/grading.hpp"
#include "inquire/gateway/gateway.hpp"

namespace inquire::dialogue {

/// The slice of a RunConfig that shapes one conversation.
struct InteractionSettings {
  Mode mode = Mode::unguided;
  int n_turns = 6;
  int k = 5;
  std::optional<int> t_assess;
  SamplingParams eval_sampling;      // Pass@k samples and assessment candidates
  SamplingParams dialogue_sampling;  // student questions and teacher replies

  static InteractionSettings from(const RunConfig& cfg);
  void validate() const;  // throws ConfigError
  nlohmann::ordered_json to_json() const;
};

struct AssessmentExchange {
  int t = 1;
  std::array<std::string, 2> candidate_solutions;
  std::array<eval::SampleVerdict, 2> verdicts;
  std::string eval_summary;
  std::string feedback;

  /// Text recorded as the student's assessment_solution message.
  std::string solution_message() const;

  friend bool operator==(const AssessmentExchange&, const AssessmentExchange&) = default;
};

struct InteractionResult {
  std::string problem_id;
  nlohmann::ordered_json config;
  ConversationHistory transcript;
  std::vector<eval::EvalRecord> curve;  // curve[t-1] is eval point t
  std::optional<AssessmentExchange> assessment;
};

nlohmann::ordered_json to_json(const AssessmentExchange& a);
AssessmentExchange assessment_from_json(const nlohmann::json& j);

/// Per-eval-point upcall with the partial result; used for checkpointing.
using Checkpoint = std::function<void(const InteractionResult&)>;

/// Student question request: the (domain, mode) question template with the
/// problem substituted as system prompt, then the history from the student's
/// side.
gateway::ChatRequest build_student_prompt(const Problem& p, Mode mode, const ConversationHistory& h,
                                          const SamplingParams& sampling);

/// Teacher reply request: the domain teacher template, then the history from
/// the teacher's side. Identical for every student mode.
gateway::ChatRequest build_teacher_prompt(const Problem& p, const ConversationHistory& h,
                                          const SamplingParams& sampling);

/// Math: "candidate 1: correct; candidate 2: incorrect". Coding: per-candidate
/// test counts plus the first failure kind. Never mentions the gold value.
std::string math_eval_summary(const std::array<eval::SampleVerdict, 2>& verdicts);
std::string coding_eval_summary(const std::array<std::optional<eval::TestCounts>, 2>& counts);

/// Teacher feedback request for an assessment. No conversation history.
gateway::ChatRequest build_assessment_request(const Problem& p, const std::array<std::string, 2>& candidates,
                                              const std::string& eval_summary, const SamplingParams& sampling);

/// Samples two answer-only candidates on `h`, grades them, summarises the
/// outcome and asks the teacher for feedback. The caller appends the pair.
AssessmentExchange run_assessment(const Problem& p, const ConversationHistory& h, int t,
                                  gateway::ModelClient& student, gateway::ModelClient& teacher,
                                  eval::Grader& grader, const InteractionSettings& s);

/// One full conversation on the canonical schedule: greeting, then for
/// t = 1..N an optional assessment (t == t_assess), Pass@k on the history so
/// far, a student question and a teacher answer.
InteractionResult run_interaction(const Problem& p, const InteractionSettings& s, gateway::ModelClient& student,
                                  gateway::ModelClient& teacher, eval::Grader& grader,
                                  const Checkpoint& checkpoint = {});

/// Mean Pass@k by assessment position: `mean_pass[j-1][t-1]` is the mean over
/// problems of eval point t when the assessment is placed at turn j.
struct PositionSweep {
  int n_turns = 0;
  std::vector<std::vector<double>> mean_pass;
  std::vector<std::vector<InteractionResult>> runs;  // runs[j-1][problem]
};

/// Called after each (position, problem) run.
using SweepCallback = std::function<void(int position, const InteractionResult&)>;

/// `run_one` performs a single interaction with `settings.t_assess` set; the
/// default runs it in-process. Positions run in order, problems in order.
using RunOne = std::function<InteractionResult(const Problem&, const InteractionSettings&)>;

PositionSweep sweep_assessment_positions(const std::vector<Problem>& problems, InteractionSettings base,
                                         const RunOne& run_one, const SweepCallback& on_run = {});

/// Matrix of per-position, per-turn mean pass for already-computed curves.
std::vector<std::vector<double>> position_matrix(const std::vector<std::vector<InteractionResult>>& runs,
                                                 int n_turns);

}  // namespace inquire::dialogue
