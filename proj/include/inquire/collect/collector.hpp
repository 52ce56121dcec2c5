// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/config.hpp"
#include "inquire/core/problem_set.hpp"
#include "inquire/core/types.hpp"
#include "inquire/eval/grading.hpp"
#include "inquire/gateway/gateway.hpp"

namespace inquire::collect {

struct CandidateOutcome {
  int index = 0;
  std::string question;
  std::string teacher_reply;
  double score = 0.0;
  std::vector<eval::SampleVerdict> answers;
  bool failed = false;  // endpoint or sandbox failure; score is then 0
  std::string failure;

  friend bool operator==(const CandidateOutcome&, const CandidateOutcome&) = default;
};

/// A system prompt plus chat turns, exactly as sent to the student.
struct RenderedPrompt {
  std::string system;
  std::vector<gateway::ChatMessage> turns;

  friend bool operator==(const RenderedPrompt&, const RenderedPrompt&) = default;
};

struct SFTRecord {
  std::string problem_id;
  int exchange = 1;
  ConversationHistory history_prefix;
  RenderedPrompt prompt;
  std::string chosen_question;
  std::string teacher_reply;
  double score = 0.0;
  std::vector<eval::SampleVerdict> best_answers;

  friend bool operator==(const SFTRecord&, const SFTRecord&) = default;
};

struct DPORecord {
  std::string problem_id;
  int exchange = 1;
  ConversationHistory history_prefix;
  RenderedPrompt prompt;
  std::string chosen;
  std::string rejected;
  int chosen_index = 0;
  int rejected_index = 0;
  double chosen_score = 0.0;
  double rejected_score = 0.0;

  double margin() const { return chosen_score - rejected_score; }
  friend bool operator==(const DPORecord&, const DPORecord&) = default;
};

struct ExchangeLog {
  int exchange = 1;
  std::vector<CandidateOutcome> candidates;  // rejected replies kept for audit
  int chosen = 0;
};

struct CollectionResult {
  std::string problem_id;
  ConversationHistory trajectory;
  std::vector<ExchangeLog> exchanges;
  std::vector<SFTRecord> sft;
  std::vector<DPORecord> dpo;
};

struct CollectSettings {
  int candidates = 4;  // m
  int exchanges = 3;   // C
  int k = 5;
  Mode guide_mode = Mode::cot;
  SamplingParams eval_sampling;
  SamplingParams dialogue_sampling;

  static CollectSettings from(const RunConfig& cfg);
  void validate() const;  // throws ConfigError
};

/// Smallest index of the maximum score. Empty input is a ContractError.
int select_best(std::span<const double> scores);
int select_best(std::span<const CandidateOutcome> outcomes);

/// Render of `build_student_prompt(p, mode, h)`.
RenderedPrompt render_student_prompt(const Problem& p, Mode mode, const ConversationHistory& h);

/// Guided collection for one problem. Per exchange: m guide questions
/// (sample indices 0..m-1), a teacher reply to each, Pass@k of the student on
/// the history extended by that pair, then commit the first-best pair.
/// SFT is emitted when the best score is positive; a DPO pair for every
/// other candidate it strictly beats. Failed candidates score 0, are never
/// chosen while another candidate succeeded and never appear as rejected;
/// an exchange where every candidate failed throws EndpointError.
CollectionResult collect_guided(const Problem& p, const CollectSettings& s, gateway::ModelClient& guide,
                                gateway::ModelClient& teacher, gateway::ModelClient& student,
                                eval::Grader& grader);

nlohmann::ordered_json to_json(const RenderedPrompt& r);  // chat messages array, system first
RenderedPrompt rendered_prompt_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const SFTRecord& r);
SFTRecord sft_record_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const DPORecord& r);
DPORecord dpo_record_from_json(const nlohmann::json& j);  // margin must be positive
nlohmann::ordered_json to_json(const CandidateOutcome& c);
nlohmann::ordered_json to_json(const ExchangeLog& e);

std::string serialize_sft(std::span<const SFTRecord> records);
std::string serialize_dpo(std::span<const DPORecord> records);
std::vector<SFTRecord> parse_sft(std::string_view text);  // ParseError with line numbers
std::vector<DPORecord> parse_dpo(std::string_view text);

void export_sft(std::span<const SFTRecord> records, const std::filesystem::path& path);
void export_dpo(std::span<const DPORecord> records, const std::filesystem::path& path);
std::vector<SFTRecord> import_sft(const std::filesystem::path& path);
std::vector<DPORecord> import_dpo(const std::filesystem::path& path);

struct FilterDecision {
  std::string problem_id;
  bool teacher_solvable = false;
  bool student_unsolved = false;
  bool kept = false;
  std::string reason;  // why dropped or skipped; empty when kept
  std::optional<eval::EvalRecord> student_record;
};

struct FilterReport {
  ProblemSet kept;
  std::vector<FilterDecision> decisions;
};

struct FilterSettings {
  int k = 5;
  SamplingParams sampling;
  FilterMode mode = FilterMode::any_correct;
};

/// Teacher-solvable: a coding problem whose metadata carries
/// `canonical_solution` runs statement + solution against the tests;
/// otherwise the solver's single answer-only completion must grade correct.
/// Student-unsolved: Pass@k on the greeting-only history fails (any mode) or
/// the correct fraction is below 0.5 (fraction mode).
FilterDecision filter_problem(const Problem& p, const FilterSettings& s, gateway::ModelClient& student,
                              gateway::ModelClient& solver, eval::Grader& grader);

/// Applies filter_problem in order; endpoint errors skip the problem with a
/// reason instead of aborting the set.
FilterReport dataset_filter(const ProblemSet& problems, const FilterSettings& s, gateway::ModelClient& student,
                            gateway::ModelClient& solver, eval::Grader& grader);

nlohmann::ordered_json to_json(const FilterDecision& d);

}  // namespace inquire::collect
