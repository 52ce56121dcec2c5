// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/collect/collector.hpp"

#include <future>

#include "inquire/core/errors.hpp"
#include "inquire/core/history.hpp"
#include "inquire/core/io.hpp"
#include "inquire/dialogue/engine.hpp"
#include "inquire/prompts/templates.hpp"

namespace inquire::collect {

using nlohmann::json;
using nlohmann::ordered_json;

CollectSettings CollectSettings::from(const RunConfig& cfg) {
  CollectSettings s;
  s.candidates = cfg.candidates;
  s.exchanges = cfg.exchanges;
  s.k = cfg.eval_k;
  s.guide_mode = cfg.guide_mode;
  s.eval_sampling = cfg.sampling;
  s.dialogue_sampling = cfg.dialogue_sampling;
  return s;
}

void CollectSettings::validate() const {
  if (candidates < 2) throw ConfigError("guided collection needs candidates >= 2");
  if (exchanges < 1) throw ConfigError("exchanges must be >= 1");
  if (k < 1) throw ConfigError("eval_k must be >= 1");
}

int select_best(std::span<const double> scores) {
  if (scores.empty()) throw ContractError("select_best of an empty list");
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  return static_cast<int>(best);
}

int select_best(std::span<const CandidateOutcome> outcomes) {
  std::vector<double> scores;
  scores.reserve(outcomes.size());
  for (const auto& o : outcomes) scores.push_back(o.score);
  return select_best(scores);
}

RenderedPrompt render_student_prompt(const Problem& p, Mode mode, const ConversationHistory& h) {
  const auto r = dialogue::build_student_prompt(p, mode, h, {});
  return {r.system_prompt, r.messages};
}

namespace {

CandidateOutcome run_candidate(const Problem& p, const CollectSettings& s, const ConversationHistory& h,
                               const gateway::ChatRequest& guide_request, int exchange, int j,
                               gateway::ModelClient& guide, gateway::ModelClient& teacher,
                               gateway::ModelClient& student, eval::Grader& grader) {
  CandidateOutcome o;
  o.index = j;
  try {
    o.question = guide.complete(guide_request, {"guide", "question", p.id, exchange, j});
    ConversationHistory branch = h;
    branch.append(Role::student, Tag::question, o.question);
    o.teacher_reply = teacher.complete(dialogue::build_teacher_prompt(p, branch, s.dialogue_sampling),
                                       {"teacher", "answer", p.id, exchange, 0});
    branch.append(Role::teacher, Tag::answer, o.teacher_reply);
    const eval::EvalRecord rec = eval::pass_at_k(student, branch, p, s.k, s.eval_sampling, grader, exchange);
    o.score = rec.pass ? 1.0 : 0.0;
    o.answers = rec.samples;
  } catch (const EndpointError& e) {
    o.failed = true;
    o.failure = e.what();
    o.score = 0.0;
  } catch (const IoError& e) {
    o.failed = true;
    o.failure = e.what();
    o.score = 0.0;
  }
  return o;
}

}  // namespace

CollectionResult collect_guided(const Problem& p, const CollectSettings& s, gateway::ModelClient& guide,
                                gateway::ModelClient& teacher, gateway::ModelClient& student,
                                eval::Grader& grader) {
  s.validate();
  CollectionResult result;
  result.problem_id = p.id;
  ConversationHistory& h = result.trajectory;
  h.problem_id = p.id;
  h.append(Role::teacher, Tag::greeting, std::string(prompts::greeting(p.domain)));

  for (int c = 1; c <= s.exchanges; ++c) {
    const auto guide_request = dialogue::build_student_prompt(p, s.guide_mode, h, s.dialogue_sampling);
    std::vector<std::future<CandidateOutcome>> pending;
    for (int j = 0; j < s.candidates; ++j) {
      pending.push_back(std::async(std::launch::async, [&, j] {
        return run_candidate(p, s, h, guide_request, c, j, guide, teacher, student, grader);
      }));
    }
    ExchangeLog log;
    log.exchange = c;
    std::exception_ptr first_error;
    for (auto& f : pending) {
      try {
        log.candidates.push_back(f.get());
      } catch (...) {
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<double> eligible;
    std::vector<int> eligible_index;
    for (const auto& o : log.candidates) {
      if (o.failed) continue;
      eligible.push_back(o.score);
      eligible_index.push_back(o.index);
    }
    if (eligible.empty()) {
      throw EndpointError("problem " + p.id + ", exchange " + std::to_string(c) + ": every candidate failed; " +
                          log.candidates.front().failure);
    }
    log.chosen = eligible_index[static_cast<std::size_t>(select_best(eligible))];
    const CandidateOutcome& best = log.candidates[static_cast<std::size_t>(log.chosen)];
    const RenderedPrompt prompt = render_student_prompt(p, s.guide_mode, h);

    if (best.score > 0.0) {
      result.sft.push_back({p.id, c, h, prompt, best.question, best.teacher_reply, best.score, best.answers});
    }
    for (const auto& o : log.candidates) {
      if (o.index == log.chosen || o.failed || !(best.score > o.score)) continue;
      result.dpo.push_back({p.id, c, h, prompt, best.question, o.question, best.index, o.index, best.score, o.score});
    }
    h.append(Role::student, Tag::question, best.question);
    h.append(Role::teacher, Tag::answer, best.teacher_reply);
    result.exchanges.push_back(std::move(log));
  }
  return result;
}

ordered_json to_json(const RenderedPrompt& r) {
  ordered_json out = ordered_json::array();
  out.push_back({{"role", "system"}, {"content", r.system}});
  for (const auto& m : r.turns) out.push_back({{"role", std::string(gateway::to_string(m.speaker))}, {"content", m.content}});
  return out;
}

RenderedPrompt rendered_prompt_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("prompt must be a non-empty message array");
  RenderedPrompt r;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string role = j[i].at("role").get<std::string>();
    const std::string content = j[i].at("content").get<std::string>();
    if (i == 0) {
      if (role != "system") throw ParseError("prompt must start with a system message");
      r.system = content;
    } else if (role == "user") {
      r.turns.push_back({gateway::Speaker::user, content});
    } else if (role == "assistant") {
      r.turns.push_back({gateway::Speaker::assistant, content});
    } else {
      throw ParseError("unexpected chat role '" + role + "'");
    }
  }
  return r;
}

ordered_json to_json(const SFTRecord& r) {
  ordered_json j;
  j["problem_id"] = r.problem_id;
  j["exchange"] = r.exchange;
  j["history"] = messages_to_json(r.history_prefix);
  j["messages"] = to_json(r.prompt);
  j["completion"] = r.chosen_question;
  j["teacher_reply"] = r.teacher_reply;
  j["score"] = r.score;
  j["best_answers"] = ordered_json::array();
  for (const auto& v : r.best_answers) j["best_answers"].push_back(eval::to_json(v));
  return j;
}

SFTRecord sft_record_from_json(const json& j) {
  try {
    SFTRecord r;
    r.problem_id = j.at("problem_id").get<std::string>();
    r.exchange = j.at("exchange").get<int>();
    r.history_prefix = messages_from_json(r.problem_id, j.at("history"));
    r.prompt = rendered_prompt_from_json(j.at("messages"));
    r.chosen_question = j.at("completion").get<std::string>();
    r.teacher_reply = j.at("teacher_reply").get<std::string>();
    r.score = j.at("score").get<double>();
    for (const auto& v : j.at("best_answers")) r.best_answers.push_back(eval::sample_verdict_from_json(v));
    if (!(r.score > 0.0)) throw ParseError("SFT record with non-positive score");
    if (const auto problems = validate_history(r.history_prefix); !problems.empty()) {
      throw ParseError("invalid history: " + problems.front());
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("SFT schema violation: ") + e.what());
  }
}

ordered_json to_json(const DPORecord& r) {
  ordered_json j;
  j["problem_id"] = r.problem_id;
  j["exchange"] = r.exchange;
  j["history"] = messages_to_json(r.history_prefix);
  j["prompt"] = to_json(r.prompt);
  j["chosen"] = r.chosen;
  j["rejected"] = r.rejected;
  j["chosen_index"] = r.chosen_index;
  j["rejected_index"] = r.rejected_index;
  j["chosen_score"] = r.chosen_score;
  j["rejected_score"] = r.rejected_score;
  j["margin"] = r.margin();
  return j;
}

DPORecord dpo_record_from_json(const json& j) {
  try {
    DPORecord r;
    r.problem_id = j.at("problem_id").get<std::string>();
    r.exchange = j.at("exchange").get<int>();
    r.history_prefix = messages_from_json(r.problem_id, j.at("history"));
    r.prompt = rendered_prompt_from_json(j.at("prompt"));
    r.chosen = j.at("chosen").get<std::string>();
    r.rejected = j.at("rejected").get<std::string>();
    r.chosen_index = j.at("chosen_index").get<int>();
    r.rejected_index = j.at("rejected_index").get<int>();
    r.chosen_score = j.at("chosen_score").get<double>();
    r.rejected_score = j.at("rejected_score").get<double>();
    if (!(r.margin() > 0.0)) throw ParseError("DPO record with non-positive margin");
    if (r.chosen_index == r.rejected_index) throw ParseError("DPO record rejects its chosen candidate");
    if (const auto problems = validate_history(r.history_prefix); !problems.empty()) {
      throw ParseError("invalid history: " + problems.front());
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("DPO schema violation: ") + e.what());
  }
}

ordered_json to_json(const CandidateOutcome& c) {
  ordered_json j;
  j["index"] = c.index;
  j["question"] = c.question;
  j["teacher_reply"] = c.teacher_reply;
  j["score"] = c.score;
  j["failed"] = c.failed;
  if (c.failed) j["failure"] = c.failure;
  j["answers"] = ordered_json::array();
  for (const auto& v : c.answers) j["answers"].push_back(eval::to_json(v));
  return j;
}

ordered_json to_json(const ExchangeLog& e) {
  ordered_json j;
  j["exchange"] = e.exchange;
  j["chosen"] = e.chosen;
  j["candidates"] = ordered_json::array();
  for (const auto& c : e.candidates) j["candidates"].push_back(to_json(c));
  return j;
}

namespace {

template <typename Record>
std::string serialize_lines(std::span<const Record> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

template <typename Record, typename Parse>
std::vector<Record> parse_lines(std::string_view text, Parse parse) {
  std::vector<Record> out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

}  // namespace

std::string serialize_sft(std::span<const SFTRecord> records) { return serialize_lines(records); }
std::string serialize_dpo(std::span<const DPORecord> records) { return serialize_lines(records); }

std::vector<SFTRecord> parse_sft(std::string_view text) {
  return parse_lines<SFTRecord>(text, [](const json& j) { return sft_record_from_json(j); });
}

std::vector<DPORecord> parse_dpo(std::string_view text) {
  return parse_lines<DPORecord>(text, [](const json& j) { return dpo_record_from_json(j); });
}

void export_sft(std::span<const SFTRecord> records, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_sft(records));
}

void export_dpo(std::span<const DPORecord> records, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_dpo(records));
}

std::vector<SFTRecord> import_sft(const std::filesystem::path& path) { return parse_sft(read_file(path)); }
std::vector<DPORecord> import_dpo(const std::filesystem::path& path) { return parse_dpo(read_file(path)); }

FilterDecision filter_problem(const Problem& p, const FilterSettings& s, gateway::ModelClient& student,
                              gateway::ModelClient& solver, eval::Grader& grader) {
  FilterDecision d;
  d.problem_id = p.id;
  ConversationHistory bare;
  bare.problem_id = p.id;
  bare.append(Role::teacher, Tag::greeting, std::string(prompts::greeting(p.domain)));

  const auto reference = p.metadata.find("canonical_solution");
  if (p.domain == Domain::coding && reference != p.metadata.end()) {
    d.teacher_solvable = grader.run_code_tests(p.statement + reference->second, p.coding_gold()).correct;
  } else {
    const std::string raw = solver.complete(prompts::answer_request(p, bare, s.sampling), {"solver", "solve", p.id, 0, 0});
    d.teacher_solvable = grader.grade(raw, p).correct;
  }
  if (!d.teacher_solvable) {
    d.reason = "not teacher-solvable";
    return d;
  }

  d.student_record = eval::pass_at_k(student, bare, p, s.k, s.sampling, grader, 1, "filter");
  d.student_unsolved = s.mode == FilterMode::any_correct ? !d.student_record->pass
                                                         : eval::correct_fraction(*d.student_record) < 0.5;
  d.kept = d.student_unsolved;
  if (!d.kept) d.reason = "solved by the student";
  return d;
}

FilterReport dataset_filter(const ProblemSet& problems, const FilterSettings& s, gateway::ModelClient& student,
                            gateway::ModelClient& solver, eval::Grader& grader) {
  FilterReport report;
  for (const auto& p : problems) {
    FilterDecision d;
    try {
      d = filter_problem(p, s, student, solver, grader);
    } catch (const EndpointError& e) {
      d = FilterDecision{};
      d.problem_id = p.id;
      d.reason = std::string("skipped: ") + e.what();
    }
    if (d.kept) report.kept.push_back(p);
    report.decisions.push_back(std::move(d));
  }
  return report;
}

ordered_json to_json(const FilterDecision& d) {
  ordered_json j;
  j["problem_id"] = d.problem_id;
  j["teacher_solvable"] = d.teacher_solvable;
  j["student_unsolved"] = d.student_unsolved;
  j["kept"] = d.kept;
  j["reason"] = d.reason;
  j["student_record"] = d.student_record ? json(eval::to_json(*d.student_record)) : json(nullptr);
  return j;
}

}  // namespace inquire::collect
