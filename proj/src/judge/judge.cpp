// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/judge/judge.hpp"

#include <cctype>
#include <cmath>
#include <regex>

#include "inquire/prompts/templates.hpp"

namespace inquire::judge {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<json> first_json_object(std::string_view text) {
  for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    std::size_t end = std::string_view::npos;
    for (std::size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        end = i;
        break;
      }
    }
    if (end == std::string_view::npos) continue;
    try {
      json j = json::parse(text.substr(start, end - start + 1));
      if (j.is_object()) return j;
    } catch (const json::parse_error&) {
    }
  }
  return std::nullopt;
}

Verdict parse_judge_verdict(std::string_view text, VerdictKind kind) {
  const auto obj = first_json_object(text);
  if (!obj) throw VerdictError(VerdictError::Reason::no_json, "judge reply has no JSON object", std::string(text));
  const char* key = kind == VerdictKind::progress ? "progress" : "similarity";
  auto invalid = [&](const std::string& why) {
    return VerdictError(VerdictError::Reason::invalid, why, std::string(text));
  };
  if (!obj->contains(key)) throw invalid(std::string("judge reply lacks '") + key + "'");
  const json& score = obj->at(key);
  if (!score.is_number()) throw invalid(std::string("'") + key + "' must be a number");
  Verdict v;
  v.score = score.get<double>();
  if (kind == VerdictKind::progress) {
    if (!(v.score >= 0.0 && v.score <= 1.0)) throw invalid("progress outside [0, 1]");
  } else {
    bool on_anchor = false;
    for (double a : kSimilarityAnchors) {
      if (std::abs(v.score - a) < 1e-9) {
        v.score = a;
        on_anchor = true;
      }
    }
    if (!on_anchor) throw invalid("similarity is not one of 0, 0.25, 0.5, 0.75, 1");
  }
  const auto just = obj->find("justification");
  if (just == obj->end() || !just->is_string() || just->get<std::string>().empty()) {
    throw invalid("justification must be a non-empty string");
  }
  v.justification = just->get<std::string>();
  return v;
}

std::string gold_solution_text(const Problem& p) {
  if (p.domain == Domain::math) return inquire::to_string(p.math_gold().answer);
  const auto ref = p.metadata.find("canonical_solution");
  if (ref != p.metadata.end()) return p.statement + ref->second;
  return p.coding_gold().canonical_tests;
}

gateway::ChatRequest progress_request(const Problem& p, std::string_view student_text, const SamplingParams& s) {
  gateway::ChatRequest r;
  r.system_prompt = std::string(prompts::judge_progress_template(p.domain));
  const char* gold_label = p.domain == Domain::math ? "Gold answer" : "Gold solution";
  r.messages.push_back({gateway::Speaker::user, "Problem:\n" + p.statement + "\n\n" + gold_label + ":\n" +
                                                    gold_solution_text(p) + "\n\nStudent response:\n" +
                                                    std::string(student_text)});
  r.sampling = s;
  r.sampling.n = 1;
  return r;
}

gateway::ChatRequest similarity_request(const Problem& p, std::string_view a, std::string_view b,
                                        const SamplingParams& s) {
  gateway::ChatRequest r;
  r.system_prompt = std::string(prompts::judge_similarity_template(p.domain));
  r.messages.push_back({gateway::Speaker::user, "Problem:\n" + p.statement + "\n\nResponse A:\n" + std::string(a) +
                                                    "\n\nResponse B:\n" + std::string(b)});
  r.sampling = s;
  r.sampling.n = 1;
  return r;
}

namespace {

JudgeResult run_judge(gateway::ModelClient& judge, gateway::ChatRequest request, VerdictKind kind,
                      const JudgeOptions& opt, gateway::CallContext ctx) {
  JudgeResult result;
  for (int attempt = 0; attempt <= opt.parse_retries; ++attempt) {
    std::string raw;
    try {
      ++result.calls;
      raw = judge.complete(request, ctx);
    } catch (const EndpointError& e) {
      result.raw.push_back(std::string("endpoint error: ") + e.what());
      return result;
    }
    result.raw.push_back(raw);
    try {
      result.verdict = parse_judge_verdict(raw, kind);
      return result;
    } catch (const VerdictError&) {
      request.messages.push_back({gateway::Speaker::assistant, raw});
      request.messages.push_back({gateway::Speaker::user, std::string(kReask)});
    }
  }
  return result;
}

}  // namespace

JudgeResult judge_progress(gateway::ModelClient& judge, const Problem& p, std::string_view student_text,
                           const JudgeOptions& opt, int turn) {
  JudgeResult r = run_judge(judge, progress_request(p, student_text, opt.sampling), VerdictKind::progress, opt,
                            {"judge", "judge_progress", p.id, turn, 0});
  if (r.verdict && p.domain == Domain::math) {
    r.gold_echo = contains_integer_token(r.verdict->justification, p.math_gold().answer);
  }
  return r;
}

JudgeResult judge_similarity(gateway::ModelClient& judge, const Problem& p, std::string_view a, std::string_view b,
                             const JudgeOptions& opt, int turn_a) {
  return run_judge(judge, similarity_request(p, a, b, opt.sampling), VerdictKind::similarity, opt,
                   {"judge", "judge_similarity", p.id, turn_a, 0});
}

bool contains_integer_token(std::string_view text, const Integer& value) {
  static const std::regex number(R"(\d{1,3}(?:,\d{3})+(?!\d)|\d+)");
  const std::string s(text);
  const Integer target = value < 0 ? Integer(-value) : value;
  for (std::sregex_iterator m(s.begin(), s.end(), number), end; m != end; ++m) {
    const auto pos = static_cast<std::size_t>(m->position());
    const auto stop = pos + static_cast<std::size_t>(m->length());
    if (pos > 0 && (std::isdigit(static_cast<unsigned char>(s[pos - 1])) || s[pos - 1] == '.')) continue;
    if (stop < s.size() && std::isdigit(static_cast<unsigned char>(s[stop]))) continue;
    if (stop + 1 < s.size() && (s[stop] == '.' || s[stop] == ',') &&
        std::isdigit(static_cast<unsigned char>(s[stop + 1]))) {
      continue;
    }
    std::string digits;
    for (char c : m->str()) {
      if (c != ',') digits += c;
    }
    if (parse_integer(digits) == target) return true;
  }
  return false;
}

ordered_json to_json(const JudgeResult& r) {
  ordered_json j;
  j["score"] = r.verdict ? json(r.verdict->score) : json(nullptr);
  j["justification"] = r.verdict ? r.verdict->justification : std::string{};
  j["missing"] = r.missing();
  j["calls"] = r.calls;
  j["gold_echo"] = r.gold_echo;
  j["raw"] = r.raw;
  return j;
}

}  // namespace inquire::judge
