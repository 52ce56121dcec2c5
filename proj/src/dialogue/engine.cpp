// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/dialogue/engine.hpp"

#include "inquire/core/errors.hpp"
#include "inquire/core/history.hpp"
#include "inquire/prompts/templates.hpp"

namespace inquire::dialogue {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::string candidate(int i) { return "candidate " + std::to_string(i + 1); }

}  // namespace

InteractionSettings InteractionSettings::from(const RunConfig& cfg) {
  InteractionSettings s;
  s.mode = cfg.mode;
  s.n_turns = cfg.n_student_turns;
  s.k = cfg.eval_k;
  s.t_assess = cfg.t_assess;
  s.eval_sampling = cfg.sampling;
  s.dialogue_sampling = cfg.dialogue_sampling;
  return s;
}

void InteractionSettings::validate() const {
  if (n_turns < 1) throw ConfigError("n_student_turns must be >= 1");
  if (k < 1) throw ConfigError("eval_k must be >= 1");
  if (t_assess && (*t_assess < 1 || *t_assess > n_turns)) {
    throw ConfigError("t_assess must lie in [1, " + std::to_string(n_turns) + "]");
  }
}

ordered_json InteractionSettings::to_json() const {
  ordered_json j;
  j["mode"] = inquire::to_string(mode);
  j["n_student_turns"] = n_turns;
  j["eval_k"] = k;
  j["t_assess"] = t_assess ? json(*t_assess) : json(nullptr);
  j["sampling"] = inquire::to_json(eval_sampling);
  j["dialogue_sampling"] = inquire::to_json(dialogue_sampling);
  return j;
}

std::string AssessmentExchange::solution_message() const {
  return "Candidate 1:\n" + candidate_solutions[0] + "\n\nCandidate 2:\n" + candidate_solutions[1];
}

ordered_json to_json(const AssessmentExchange& a) {
  ordered_json j;
  j["t"] = a.t;
  j["candidate_solutions"] = {a.candidate_solutions[0], a.candidate_solutions[1]};
  j["verdicts"] = {eval::to_json(a.verdicts[0]), eval::to_json(a.verdicts[1])};
  j["eval_summary"] = a.eval_summary;
  j["feedback"] = a.feedback;
  return j;
}

AssessmentExchange assessment_from_json(const json& j) {
  try {
    AssessmentExchange a;
    a.t = j.at("t").get<int>();
    const auto& c = j.at("candidate_solutions");
    const auto& v = j.at("verdicts");
    if (c.size() != 2 || v.size() != 2) throw ParseError("assessment needs exactly two candidates");
    for (std::size_t i = 0; i < 2; ++i) {
      a.candidate_solutions[i] = c.at(i).get<std::string>();
      a.verdicts[i] = eval::sample_verdict_from_json(v.at(i));
    }
    a.eval_summary = j.at("eval_summary").get<std::string>();
    a.feedback = j.at("feedback").get<std::string>();
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("assessment schema violation: ") + e.what());
  }
}

gateway::ChatRequest build_student_prompt(const Problem& p, Mode mode, const ConversationHistory& h,
                                          const SamplingParams& sampling) {
  gateway::ChatRequest r;
  r.system_prompt = prompts::substitute_problem(prompts::student_question_template(p.domain, mode), p.domain,
                                                p.statement);
  r.messages = prompts::render_history(h, Role::student);
  r.sampling = sampling;
  r.sampling.n = 1;
  return r;
}

gateway::ChatRequest build_teacher_prompt(const Problem& p, const ConversationHistory& h,
                                          const SamplingParams& sampling) {
  gateway::ChatRequest r;
  r.system_prompt = prompts::substitute_problem(prompts::teacher_template(p.domain), p.domain, p.statement);
  r.messages = prompts::render_history(h, Role::teacher);
  r.sampling = sampling;
  r.sampling.n = 1;
  return r;
}

std::string math_eval_summary(const std::array<eval::SampleVerdict, 2>& verdicts) {
  std::string out;
  for (int i = 0; i < 2; ++i) {
    const auto& v = verdicts[static_cast<std::size_t>(i)];
    if (i > 0) out += "; ";
    out += candidate(i) + ": ";
    if (v.correct) {
      out += "correct";
    } else if (v.failure_reason == eval::FailureReason::no_extraction) {
      out += "no final answer given";
    } else {
      out += "incorrect";
    }
  }
  return out;
}

std::string coding_eval_summary(const std::array<std::optional<eval::TestCounts>, 2>& counts) {
  std::string out;
  for (int i = 0; i < 2; ++i) {
    const auto& c = counts[static_cast<std::size_t>(i)];
    if (i > 0) out += "; ";
    out += candidate(i) + ": ";
    if (!c) {
      out += "no code block found";
      continue;
    }
    out += c->passed == c->total ? "pass" : "fail";
    out += " (" + std::to_string(c->passed) + "/" + std::to_string(c->total) + " tests passed";
    if (c->first_failure != eval::FailureReason::none) {
      out += ", ";
      switch (c->first_failure) {
        case eval::FailureReason::timeout: out += "timeout"; break;
        case eval::FailureReason::test_failure: out += "assertion failed"; break;
        default: out += "runtime error"; break;
      }
    }
    out += ")";
  }
  return out;
}

gateway::ChatRequest build_assessment_request(const Problem& p, const std::array<std::string, 2>& candidates,
                                              const std::string& eval_summary, const SamplingParams& sampling) {
  gateway::ChatRequest r;
  r.sampling = sampling;
  r.sampling.n = 1;
  const std::string attempts = "Candidate 1:\n" + candidates[0] + "\n\nCandidate 2:\n" + candidates[1];
  if (p.domain == Domain::math) {
    r.system_prompt = prompts::substitute_problem(prompts::teacher_template(p.domain), p.domain, p.statement);
    std::string user = prompts::substitute_problem(prompts::assessment_template(p.domain), p.domain, p.statement);
    replace_all(user, "{eval_summary}", eval_summary);
    replace_all(user, "{student_solution}", attempts);
    r.messages.push_back({gateway::Speaker::user, std::move(user)});
  } else {
    r.system_prompt = std::string(prompts::assessment_template(p.domain));
    r.messages.push_back({gateway::Speaker::user, "Problem statement:\n" + p.statement + "\n\nStudent attempts:\n" +
                                                      attempts + "\n\nTest summary: " + eval_summary});
  }
  return r;
}

AssessmentExchange run_assessment(const Problem& p, const ConversationHistory& h, int t,
                                  gateway::ModelClient& student, gateway::ModelClient& teacher,
                                  eval::Grader& grader, const InteractionSettings& s) {
  AssessmentExchange a;
  a.t = t;
  const auto raws = student.sample_n(prompts::answer_request(p, h, s.eval_sampling), 2,
                                     {"student", "assessment", p.id, t, 0});
  for (std::size_t i = 0; i < 2; ++i) {
    a.candidate_solutions[i] = raws[i];
    a.verdicts[i] = grader.grade(raws[i], p);
  }
  if (p.domain == Domain::math) {
    a.eval_summary = math_eval_summary(a.verdicts);
  } else {
    std::array<std::optional<eval::TestCounts>, 2> counts;
    for (std::size_t i = 0; i < 2; ++i) {
      if (const auto* src = std::get_if<std::string>(&a.verdicts[i].extracted)) {
        counts[i] = grader.count_tests(*src, p.coding_gold());
      }
    }
    a.eval_summary = coding_eval_summary(counts);
  }
  a.feedback = teacher.complete(build_assessment_request(p, a.candidate_solutions, a.eval_summary,
                                                         s.dialogue_sampling),
                                {"teacher", "feedback", p.id, t, 0});
  return a;
}

InteractionResult run_interaction(const Problem& p, const InteractionSettings& s, gateway::ModelClient& student,
                                  gateway::ModelClient& teacher, eval::Grader& grader,
                                  const Checkpoint& checkpoint) {
  s.validate();
  InteractionResult r;
  r.problem_id = p.id;
  r.config = s.to_json();
  r.config["student_model"] = student.model_name();
  r.config["teacher_model"] = teacher.model_name();
  r.transcript.problem_id = p.id;
  r.transcript.append(Role::teacher, Tag::greeting, std::string(prompts::greeting(p.domain)));

  for (int t = 1; t <= s.n_turns; ++t) {
    if (s.t_assess && *s.t_assess == t) {
      AssessmentExchange a = run_assessment(p, r.transcript, t, student, teacher, grader, s);
      r.transcript.append(Role::student, Tag::assessment_solution, a.solution_message());
      r.transcript.append(Role::teacher, Tag::assessment_feedback, a.feedback);
      r.assessment = std::move(a);
    }
    r.curve.push_back(eval::pass_at_k(student, r.transcript, p, s.k, s.eval_sampling, grader, t));
    if (checkpoint) checkpoint(r);
    const std::string question =
        student.complete(build_student_prompt(p, s.mode, r.transcript, s.dialogue_sampling),
                         {"student", "question", p.id, t, 0});
    r.transcript.append(Role::student, Tag::question, question);
    const std::string answer = teacher.complete(build_teacher_prompt(p, r.transcript, s.dialogue_sampling),
                                                {"teacher", "answer", p.id, t, 0});
    r.transcript.append(Role::teacher, Tag::answer, answer);
  }
  validate_history(r.transcript);
  if (checkpoint) checkpoint(r);
  return r;
}

std::vector<std::vector<double>> position_matrix(const std::vector<std::vector<InteractionResult>>& runs,
                                                 int n_turns) {
  std::vector<std::vector<double>> m;
  for (const auto& row : runs) {
    std::vector<double> means(static_cast<std::size_t>(n_turns), 0.0);
    for (int t = 0; t < n_turns; ++t) {
      std::vector<eval::EvalRecord> at_t;
      for (const auto& run : row) {
        if (static_cast<int>(run.curve.size()) > t) at_t.push_back(run.curve[static_cast<std::size_t>(t)]);
      }
      means[static_cast<std::size_t>(t)] = eval::mean_pass(at_t);
    }
    m.push_back(std::move(means));
  }
  return m;
}

PositionSweep sweep_assessment_positions(const std::vector<Problem>& problems, InteractionSettings base,
                                         const RunOne& run_one, const SweepCallback& on_run) {
  base.t_assess.reset();
  base.validate();
  if (!run_one) throw ContractError("sweep_assessment_positions needs a runner");
  PositionSweep sweep;
  sweep.n_turns = base.n_turns;
  for (int j = 1; j <= base.n_turns; ++j) {
    InteractionSettings s = base;
    s.t_assess = j;
    std::vector<InteractionResult> row;
    for (const auto& p : problems) {
      row.push_back(run_one(p, s));
      if (on_run) on_run(j, row.back());
    }
    sweep.runs.push_back(std::move(row));
  }
  sweep.mean_pass = position_matrix(sweep.runs, base.n_turns);
  return sweep;
}

}  // namespace inquire::dialogue
