// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include <optional>

#include "inquire/core/errors.hpp"
#include "inquire/gateway/backend.hpp"

namespace inquire::gateway {

using nlohmann::json;

struct ScriptedBackend::Rule {
  std::optional<std::string> role, purpose, problem_id;
  std::optional<int> turn, sample_index;
  std::vector<std::string> history_contains, history_lacks, system_contains, last_contains;
  std::vector<std::string> responses;
  bool indexed = false;  // `responses` list rather than a single `response`

  bool matches(const ChatRequest& r, const CallContext& ctx) const {
    if (role && *role != ctx.role) return false;
    if (purpose && *purpose != ctx.purpose) return false;
    if (problem_id && *problem_id != ctx.problem_id) return false;
    if (turn && *turn != ctx.turn) return false;
    if (sample_index && *sample_index != ctx.sample_index) return false;
    auto in_history = [&](const std::string& needle) {
      for (const auto& m : r.messages) {
        if (m.content.find(needle) != std::string::npos) return true;
      }
      return false;
    };
    for (const auto& s : history_contains) {
      if (!in_history(s)) return false;
    }
    for (const auto& s : history_lacks) {
      if (in_history(s)) return false;
    }
    for (const auto& s : system_contains) {
      if (r.system_prompt.find(s) == std::string::npos) return false;
    }
    for (const auto& s : last_contains) {
      if (r.messages.empty() || r.messages.back().content.find(s) == std::string::npos) return false;
    }
    if (indexed && ctx.sample_index >= static_cast<int>(responses.size())) return false;
    return true;
  }
};

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& v = j.at(key);
  if (v.is_string()) return {v.get<std::string>()};
  return v.get<std::vector<std::string>>();
}

}  // namespace

ScriptedBackend::ScriptedBackend(const json& script) {
  const json& rules = script.is_array() ? script : script.value("rules", json::array());
  if (!rules.is_array()) throw ConfigError("script: 'rules' must be an array");
  rules_.reserve(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const json& j = rules[i];
    auto rule = std::make_shared<Rule>();
    try {
      if (j.contains("role")) rule->role = j.at("role").get<std::string>();
      if (j.contains("purpose")) rule->purpose = j.at("purpose").get<std::string>();
      if (j.contains("problem_id")) rule->problem_id = j.at("problem_id").get<std::string>();
      if (j.contains("turn")) rule->turn = j.at("turn").get<int>();
      if (j.contains("sample_index")) rule->sample_index = j.at("sample_index").get<int>();
      rule->history_contains = string_list(j, "history_contains");
      rule->history_lacks = string_list(j, "history_lacks");
      rule->system_contains = string_list(j, "system_contains");
      rule->last_contains = string_list(j, "last_contains");
      if (j.contains("responses")) {
        rule->responses = j.at("responses").get<std::vector<std::string>>();
        rule->indexed = true;
      } else if (j.contains("response")) {
        rule->responses = {j.at("response").get<std::string>()};
      } else {
        throw ConfigError("script rule " + std::to_string(i) + " has no response");
      }
    } catch (const json::exception& e) {
      throw ConfigError("script rule " + std::to_string(i) + ": " + e.what());
    }
    rules_.push_back(std::move(rule));
  }
}

std::string ScriptedBackend::complete(const ChatRequest& request, const CallContext& ctx) {
  for (const auto& rule : rules_) {
    if (rule->matches(request, ctx)) {
      return rule->indexed ? rule->responses[static_cast<std::size_t>(ctx.sample_index)]
                           : rule->responses.front();
    }
  }
  throw ScriptExhaustedError("script has no response for (role=" + ctx.role + ", purpose=" +
                             ctx.purpose + ", problem=" + ctx.problem_id + ", turn=" +
                             std::to_string(ctx.turn) + ", sample=" +
                             std::to_string(ctx.sample_index) + ")");
}

std::shared_ptr<Backend> make_backend(const EndpointConfig& cfg) {
  if (cfg.kind == EndpointConfig::Kind::scripted) return std::make_shared<ScriptedBackend>(cfg.script);
  return std::make_shared<HttpBackend>(cfg);
}

}  // namespace inquire::gateway
