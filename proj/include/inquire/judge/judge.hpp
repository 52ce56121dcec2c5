// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/errors.hpp"
#include "inquire/core/types.hpp"
#include "inquire/gateway/gateway.hpp"

namespace inquire::judge {

enum class VerdictKind { progress, similarity };

/// A judge reply that could not be turned into a verdict. `raw()` keeps the
/// reply for audit.
class VerdictError : public ParseError {
 public:
  enum class Reason { no_json, invalid };
  VerdictError(Reason reason, const std::string& what, std::string raw)
      : ParseError(what), reason_(reason), raw_(std::move(raw)) {}
  Reason reason() const noexcept { return reason_; }
  const std::string& raw() const noexcept { return raw_; }

 private:
  Reason reason_;
  std::string raw_;
};

struct Verdict {
  double score = 0.0;  // progress in [0, 1] or a similarity anchor
  std::string justification;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline constexpr double kSimilarityAnchors[] = {0.0, 0.25, 0.5, 0.75, 1.0};

/// First well-formed JSON object in `text` (surrounding prose and code fences
/// are skipped), or nullopt.
std::optional<nlohmann::json> first_json_object(std::string_view text);

/// Parses and validates a judge reply. The score must be a JSON number;
/// progress must lie in [0, 1], similarity must be one of the anchors, and
/// the justification must be a non-empty string. Throws VerdictError.
Verdict parse_judge_verdict(std::string_view text, VerdictKind kind);

/// Outcome of one judged item after retries.
struct JudgeResult {
  std::optional<Verdict> verdict;  // empty: judged-missing
  int calls = 0;
  bool gold_echo = false;  // justification repeats the math gold as a token
  std::vector<std::string> raw;

  bool missing() const { return !verdict.has_value(); }
};

struct JudgeOptions {
  int parse_retries = 2;
  SamplingParams sampling{0.0, 2048, 1, std::nullopt};
};

inline constexpr std::string_view kReask = "Return only the JSON object.";

/// Progress request: the domain progress rubric as system prompt; the
/// problem, its gold solution and the student's turn as the user message.
gateway::ChatRequest progress_request(const Problem& p, std::string_view student_text, const SamplingParams& s);

/// Similarity request: the domain similarity rubric; problem and both
/// responses as the user message.
gateway::ChatRequest similarity_request(const Problem& p, std::string_view a, std::string_view b,
                                        const SamplingParams& s);

/// Calls the judge and parses, re-asking with kReask on parse failure up to
/// `parse_retries` more times. Endpoint errors are not retried here (the
/// gateway's policy already ran) and yield judged-missing.
JudgeResult judge_progress(gateway::ModelClient& judge, const Problem& p, std::string_view student_text,
                           const JudgeOptions& opt, int turn);
JudgeResult judge_similarity(gateway::ModelClient& judge, const Problem& p, std::string_view a, std::string_view b,
                             const JudgeOptions& opt, int turn_a);

/// True when `text` contains `value` as a standalone integer token: not
/// part of a longer number or a decimal. Thousands separators count.
bool contains_integer_token(std::string_view text, const Integer& value);

/// Text of the gold solution shown to the progress judge.
std::string gold_solution_text(const Problem& p);

nlohmann::ordered_json to_json(const JudgeResult& r);

}  // namespace inquire::judge
