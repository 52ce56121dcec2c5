// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/judge/analytics.hpp"

#include <cmath>

#include "inquire/core/errors.hpp"
#include "inquire/judge/judge.hpp"

namespace inquire::judge {

namespace {
constexpr double kTolerance = 1e-12;
}  // namespace

CurveSummary summarize_curves(const std::string& label, const std::vector<std::vector<eval::EvalRecord>>& curves,
                              int n_turns) {
  CurveSummary s;
  s.label = label;
  s.total_problems = static_cast<int>(curves.size());
  s.mean_pass.assign(static_cast<std::size_t>(n_turns), 0.0);
  s.n_problems.assign(static_cast<std::size_t>(n_turns), 0);
  std::vector<int> passed(static_cast<std::size_t>(n_turns), 0);
  for (const auto& curve : curves) {
    for (const auto& r : curve) {
      if (r.t < 1 || r.t > n_turns) continue;
      const auto i = static_cast<std::size_t>(r.t - 1);
      ++s.n_problems[i];
      passed[i] += r.pass ? 1 : 0;
    }
  }
  for (std::size_t i = 0; i < passed.size(); ++i) {
    if (s.n_problems[i] > 0) s.mean_pass[i] = static_cast<double>(passed[i]) / s.n_problems[i];
  }
  return s;
}

TurnEfficiency turn_efficiency(const std::vector<double>& reference, const std::vector<double>& candidate) {
  if (reference.size() != candidate.size()) throw ContractError("turn_efficiency needs curves of equal length");
  if (reference.empty()) throw ContractError("turn_efficiency needs non-empty curves");
  TurnEfficiency e;
  e.target = reference.back();
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i] >= e.target - kTolerance) {
      e.reference_turn = static_cast<int>(i) + 1;
      break;
    }
  }
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (candidate[i] >= e.target - kTolerance) {
      e.candidate_turn = static_cast<int>(i) + 1;
      e.reached = true;
      break;
    }
  }
  e.saved = e.reached ? std::max(0, e.reference_turn - e.candidate_turn) : 0;
  return e;
}

std::vector<LeakFlag> leak_audit(const std::vector<ConversationHistory>& transcripts, const ProblemSet& problems) {
  std::vector<LeakFlag> flags;
  for (const auto& h : transcripts) {
    const Problem* p = find_problem(problems, h.problem_id);
    if (p == nullptr) continue;
    for (const auto& m : h.messages) {
      if (m.role != Role::teacher) continue;
      if (p->domain == Domain::math) {
        if (contains_integer_token(m.content, p->math_gold().answer)) {
          flags.push_back({h.problem_id, m.turn_index, m.tag, "gold_integer"});
        }
      } else if (m.content.find("```") != std::string::npos) {
        flags.push_back({h.problem_id, m.turn_index, m.tag, "code_fence"});
      }
    }
  }
  return flags;
}

nlohmann::ordered_json to_json(const LeakFlag& f) {
  nlohmann::ordered_json j;
  j["problem_id"] = f.problem_id;
  j["turn_index"] = f.turn_index;
  j["tag"] = inquire::to_string(f.tag);
  j["kind"] = f.kind;
  return j;
}

std::vector<std::string> student_questions(const ConversationHistory& h) {
  std::vector<std::string> out;
  for (const auto& m : h.messages) {
    if (m.tag == Tag::question) out.push_back(m.content);
  }
  return out;
}

}  // namespace inquire::judge
