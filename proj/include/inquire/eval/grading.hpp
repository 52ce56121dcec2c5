// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <semaphore>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/config.hpp"
#include "inquire/core/types.hpp"
#include "inquire/eval/sandbox.hpp"
#include "inquire/gateway/gateway.hpp"

namespace inquire::eval {

enum class FailureReason { none, no_extraction, wrong_answer, test_failure, timeout, runtime_error };

std::string_view to_string(FailureReason r);
FailureReason parse_failure_reason(std::string_view s);

/// Nothing, an extracted integer (math) or extracted source (coding).
using Extracted = std::variant<std::monostate, Integer, std::string>;

struct SampleVerdict {
  std::string raw;
  Extracted extracted;
  bool correct = false;
  FailureReason failure_reason = FailureReason::no_extraction;
  std::string detail;  // last diagnostic line, if any

  friend bool operator==(const SampleVerdict&, const SampleVerdict&) = default;
};

struct EvalRecord {
  std::string problem_id;
  int t = 1;
  int k = 0;
  std::vector<SampleVerdict> samples;
  bool pass = false;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

struct TestCounts {
  int passed = 0;
  int total = 0;
  FailureReason first_failure = FailureReason::none;
};

/// The any-correct rule.
bool any_correct(std::span<const SampleVerdict> samples);

/// Mean of `pass` over records; 0 for an empty span.
double mean_pass(std::span<const EvalRecord> records);

/// Fraction of correct samples in one record.
double correct_fraction(const EvalRecord& r);

nlohmann::ordered_json to_json(const SampleVerdict& v);
SampleVerdict sample_verdict_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const EvalRecord& r);
EvalRecord eval_record_from_json(const nlohmann::json& j);

/// Grades raw completions against gold. Owns the cap on simultaneous
/// sandbox executions.
class Grader {
 public:
  explicit Grader(SandboxLimits limits = {});

  /// Pure function of (raw, problem, limits).
  SampleVerdict grade(const std::string& raw, const Problem& p);

  /// Runs the candidate against the full canonical suite.
  SampleVerdict run_code_tests(std::string_view source, const CodingGold& gold);

  /// Per-test outcome counts: top-level `assert` lines of the canonical tests
  /// run one per execution; other suites count as a single test.
  TestCounts count_tests(std::string_view source, const CodingGold& gold);

  const SandboxLimits& limits() const { return limits_; }

 private:
  ExecutionResult run(std::string_view program);

  SandboxLimits limits_;
  std::unique_ptr<std::counting_semaphore<1024>> slots_;
};

/// Draws k answer-only samples for history `h`, grades each and applies the
/// any-correct rule. Endpoint failures mark the affected sample
/// runtime_error; if every sample fails the EndpointError propagates.
/// Scripted-key exhaustion always propagates.
EvalRecord pass_at_k(gateway::ModelClient& student, const ConversationHistory& h, const Problem& p,
                     int k, const SamplingParams& sampling, Grader& grader, int eval_point,
                     std::string_view purpose = "eval");

}  // namespace inquire::eval
