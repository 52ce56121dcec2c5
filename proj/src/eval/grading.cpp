// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/eval/grading.hpp"

#include <algorithm>
#include <future>

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"
#include "inquire/eval/extract.hpp"
#include "inquire/eval/sandbox.hpp"
#include "inquire/prompts/templates.hpp"

namespace inquire::eval {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::none: return "none";
    case FailureReason::no_extraction: return "no_extraction";
    case FailureReason::wrong_answer: return "wrong_answer";
    case FailureReason::test_failure: return "test_failure";
    case FailureReason::timeout: return "timeout";
    case FailureReason::runtime_error: return "runtime_error";
  }
  return "unknown";
}

FailureReason parse_failure_reason(std::string_view s) {
  for (auto r : {FailureReason::none, FailureReason::no_extraction, FailureReason::wrong_answer,
                 FailureReason::test_failure, FailureReason::timeout, FailureReason::runtime_error}) {
    if (to_string(r) == s) return r;
  }
  throw ParseError("unknown failure_reason '" + std::string(s) + "'");
}

bool any_correct(std::span<const SampleVerdict> samples) {
  return std::any_of(samples.begin(), samples.end(), [](const SampleVerdict& v) { return v.correct; });
}

double mean_pass(std::span<const EvalRecord> records) {
  if (records.empty()) return 0.0;
  std::size_t passed = 0;
  for (const auto& r : records) passed += r.pass ? 1 : 0;
  return static_cast<double>(passed) / static_cast<double>(records.size());
}

double correct_fraction(const EvalRecord& r) {
  if (r.samples.empty()) return 0.0;
  const auto n = std::count_if(r.samples.begin(), r.samples.end(), [](const auto& v) { return v.correct; });
  return static_cast<double>(n) / static_cast<double>(r.samples.size());
}

ordered_json to_json(const SampleVerdict& v) {
  ordered_json j;
  j["raw"] = v.raw;
  if (const auto* i = std::get_if<Integer>(&v.extracted)) {
    j["extracted"] = {{"integer", inquire::to_string(*i)}};
  } else if (const auto* s = std::get_if<std::string>(&v.extracted)) {
    j["extracted"] = {{"source", *s}};
  } else {
    j["extracted"] = nullptr;
  }
  j["correct"] = v.correct;
  j["failure_reason"] = to_string(v.failure_reason);
  j["detail"] = v.detail;
  return j;
}

SampleVerdict sample_verdict_from_json(const json& j) {
  try {
    SampleVerdict v;
    v.raw = j.at("raw").get<std::string>();
    const auto& e = j.at("extracted");
    if (e.is_object() && e.contains("integer")) {
      v.extracted = parse_integer(e.at("integer").get<std::string>());
    } else if (e.is_object() && e.contains("source")) {
      v.extracted = e.at("source").get<std::string>();
    } else if (!e.is_null()) {
      throw ParseError("bad 'extracted' value");
    }
    v.correct = j.at("correct").get<bool>();
    v.failure_reason = parse_failure_reason(j.at("failure_reason").get<std::string>());
    v.detail = j.value("detail", std::string{});
    if (v.correct && v.failure_reason != FailureReason::none) {
      throw ParseError("correct sample with failure_reason " + std::string(to_string(v.failure_reason)));
    }
    return v;
  } catch (const json::exception& e) {
    throw ParseError(std::string("sample verdict schema violation: ") + e.what());
  }
}

ordered_json to_json(const EvalRecord& r) {
  ordered_json j;
  j["problem_id"] = r.problem_id;
  j["t"] = r.t;
  j["k"] = r.k;
  j["pass"] = r.pass;
  j["samples"] = ordered_json::array();
  for (const auto& s : r.samples) j["samples"].push_back(to_json(s));
  return j;
}

EvalRecord eval_record_from_json(const json& j) {
  try {
    EvalRecord r;
    r.problem_id = j.at("problem_id").get<std::string>();
    r.t = j.at("t").get<int>();
    r.k = j.at("k").get<int>();
    r.pass = j.at("pass").get<bool>();
    for (const auto& s : j.at("samples")) r.samples.push_back(sample_verdict_from_json(s));
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("eval record schema violation: ") + e.what());
  }
}

Grader::Grader(SandboxLimits limits)
    : limits_(std::move(limits)),
      slots_(std::make_unique<std::counting_semaphore<1024>>(std::clamp(limits_.max_parallel, 1, 1024))) {}

ExecutionResult Grader::run(std::string_view program) {
  slots_->acquire();
  struct Release {
    std::counting_semaphore<1024>* s;
    ~Release() { s->release(); }
  } release{slots_.get()};
  return execute_program(program, limits_);
}

namespace {

std::string last_line(std::string_view text) {
  const auto lines = split_lines(text);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    if (!it->empty()) return std::string(*it);
  }
  return {};
}

FailureReason classify(const ExecutionResult& r, std::string* detail) {
  if (r.timed_out) {
    *detail = "timed out";
    return FailureReason::timeout;
  }
  if (!r.signaled && r.exit_code == 0) return FailureReason::none;
  if (r.signaled) {
    *detail = "killed by signal " + std::to_string(r.term_signal);
    return FailureReason::runtime_error;
  }
  *detail = last_line(r.stderr_text);
  if (r.stderr_text.find("AssertionError") != std::string::npos) return FailureReason::test_failure;
  return FailureReason::runtime_error;
}

struct SplitSuite {
  std::string preamble;
  std::vector<std::string> asserts;
};

SplitSuite split_suite(std::string_view tests) {
  SplitSuite out;
  bool in_assert = false;
  for (std::string_view line : split_lines(tests)) {
    const bool top_assert = line.starts_with("assert ") || line.starts_with("assert(");
    const bool continuation = in_assert && !line.empty() && (line.front() == ' ' || line.front() == '\t' ||
                                                             line.front() == ')' || line.front() == ']');
    if (top_assert) {
      out.asserts.emplace_back(line);
      in_assert = true;
    } else if (continuation) {
      out.asserts.back() += '\n';
      out.asserts.back() += line;
    } else {
      in_assert = false;
      out.preamble += line;
      out.preamble += '\n';
    }
  }
  return out;
}

}  // namespace

SampleVerdict Grader::run_code_tests(std::string_view source, const CodingGold& gold) {
  if (source.empty()) throw ContractError("run_code_tests requires non-empty source");
  SampleVerdict v;
  v.extracted = std::string(source);
  const ExecutionResult r = run(compose_program(source, gold));
  v.failure_reason = classify(r, &v.detail);
  v.correct = v.failure_reason == FailureReason::none;
  return v;
}

TestCounts Grader::count_tests(std::string_view source, const CodingGold& gold) {
  TestCounts counts;
  const SplitSuite suite = split_suite(gold.canonical_tests);
  if (suite.asserts.empty()) {
    const SampleVerdict v = run_code_tests(source, gold);
    counts.total = 1;
    counts.passed = v.correct ? 1 : 0;
    counts.first_failure = v.failure_reason;
    return counts;
  }
  counts.total = static_cast<int>(suite.asserts.size());
  for (const auto& a : suite.asserts) {
    CodingGold one{gold.entry_point, suite.preamble + a + "\n"};
    std::string detail;
    const FailureReason reason = classify(run(compose_program(source, one)), &detail);
    if (reason == FailureReason::none) {
      ++counts.passed;
    } else if (counts.first_failure == FailureReason::none) {
      counts.first_failure = reason;
    }
  }
  return counts;
}

SampleVerdict Grader::grade(const std::string& raw, const Problem& p) {
  if (p.domain == Domain::math) {
    SampleVerdict v;
    v.raw = raw;
    const auto answer = extract_math_answer(raw);
    if (!answer) {
      v.failure_reason = FailureReason::no_extraction;
      return v;
    }
    v.extracted = *answer;
    v.correct = *answer == p.math_gold().answer;
    v.failure_reason = v.correct ? FailureReason::none : FailureReason::wrong_answer;
    return v;
  }
  const auto code = extract_code_block(raw);
  if (!code || code->find_first_not_of(" \t\r\n") == std::string::npos) {
    SampleVerdict v;
    v.raw = raw;
    v.failure_reason = FailureReason::no_extraction;
    return v;
  }
  SampleVerdict v = run_code_tests(*code, p.coding_gold());
  v.raw = raw;
  return v;
}

EvalRecord pass_at_k(gateway::ModelClient& student, const ConversationHistory& h, const Problem& p,
                     int k, const SamplingParams& sampling, Grader& grader, int eval_point,
                     std::string_view purpose) {
  if (k < 1) throw ContractError("pass_at_k requires k >= 1");
  const gateway::ChatRequest request = prompts::answer_request(p, h, sampling);
  gateway::CallContext ctx{"student", std::string(purpose), p.id, eval_point, 0};

  std::vector<std::optional<std::string>> raws(static_cast<std::size_t>(k));
  std::vector<std::string> errors(static_cast<std::size_t>(k));
  int failures = 0;
  for (int i = 0; i < k; ++i) {
    ctx.sample_index = i;
    try {
      raws[static_cast<std::size_t>(i)] = student.complete(request, ctx);
    } catch (const EndpointError& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
      ++failures;
    }
  }
  if (failures == k) throw EndpointError("every sample failed: " + errors.front(), 0);

  EvalRecord record;
  record.problem_id = p.id;
  record.t = eval_point;
  record.k = k;
  record.samples.resize(static_cast<std::size_t>(k));
  std::vector<std::future<SampleVerdict>> pending(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < raws.size(); ++i) {
    if (!raws[i]) {
      SampleVerdict v;
      v.failure_reason = FailureReason::runtime_error;
      v.detail = errors[i];
      record.samples[i] = std::move(v);
    } else if (p.domain == Domain::coding && k > 1) {
      pending[i] = std::async(std::launch::async, [&grader, &p, raw = *raws[i]] { return grader.grade(raw, p); });
    } else {
      record.samples[i] = grader.grade(*raws[i], p);
    }
  }
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (pending[i].valid()) record.samples[i] = pending[i].get();
  }
  record.pass = any_correct(record.samples);
  return record;
}

}  // namespace inquire::eval
