// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/core/config.hpp"

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"

namespace inquire {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::chrono::milliseconds RetryPolicy::delay_after(int attempt) const {
  if (backoff.empty()) return std::chrono::milliseconds(0);
  const auto i = static_cast<std::size_t>(std::max(attempt, 1) - 1);
  return backoff[std::min(i, backoff.size() - 1)];
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

SamplingParams parse_sampling(const json& j, SamplingParams defaults) {
  SamplingParams s = defaults;
  s.temperature = j.value("temperature", s.temperature);
  s.max_tokens = j.value("max_tokens", s.max_tokens);
  s.n = j.value("n", s.n);
  if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::int64_t>();
  if (s.temperature < 0) throw ConfigError("sampling.temperature must be >= 0");
  if (s.max_tokens <= 0) throw ConfigError("sampling.max_tokens must be > 0");
  if (s.n < 1) throw ConfigError("sampling.n must be >= 1");
  return s;
}

EndpointConfig parse_endpoint(const std::string& role, const json& j, const fs::path& base) {
  EndpointConfig e;
  const std::string kind = j.value("kind", std::string("scripted"));
  if (kind == "scripted") {
    e.kind = EndpointConfig::Kind::scripted;
    if (!j.contains("script")) throw ConfigError("endpoint '" + role + "': scripted endpoint needs 'script'");
    const auto& s = j.at("script");
    if (s.is_string()) {
      const fs::path p = resolve(base, s.get<std::string>());
      try {
        e.script = json::parse(read_file(p));
      } catch (const json::parse_error& err) {
        throw ConfigError("endpoint '" + role + "': invalid script " + p.string() + ": " + err.what());
      } catch (const IoError& err) {
        throw ConfigError("endpoint '" + role + "': " + err.what());
      }
    } else {
      e.script = s;
    }
    e.model_name = j.value("model", "scripted-" + role);
  } else if (kind == "http" || kind == "http_openai_compatible") {
    e.kind = EndpointConfig::Kind::http_openai_compatible;
    e.base_url = j.value("base_url", std::string{});
    if (e.base_url.empty()) throw ConfigError("endpoint '" + role + "': http endpoint needs 'base_url'");
    e.model_name = j.value("model", std::string{});
    if (e.model_name.empty()) throw ConfigError("endpoint '" + role + "': http endpoint needs 'model'");
    e.api_key_env = j.value("api_key_env", std::string{});
    e.request_timeout_s = j.value("request_timeout_s", e.request_timeout_s);
  } else {
    throw ConfigError("endpoint '" + role + "': unknown kind '" + kind + "'");
  }
  e.retry.max_attempts = j.value("max_attempts", e.retry.max_attempts);
  if (j.contains("backoff_ms")) {
    e.retry.backoff.clear();
    for (const auto& v : j.at("backoff_ms")) e.retry.backoff.emplace_back(v.get<std::int64_t>());
  }
  e.max_in_flight = j.value("max_in_flight", e.max_in_flight);
  if (e.retry.max_attempts < 1) throw ConfigError("endpoint '" + role + "': max_attempts must be >= 1");
  if (e.max_in_flight < 1) throw ConfigError("endpoint '" + role + "': max_in_flight must be >= 1");
  return e;
}

ordered_json endpoint_json(const EndpointConfig& e) {
  ordered_json j;
  if (e.kind == EndpointConfig::Kind::scripted) {
    j["kind"] = "scripted";
    j["script"] = e.script;
  } else {
    j["kind"] = "http";
    j["base_url"] = e.base_url;
    j["api_key_env"] = e.api_key_env;
    j["request_timeout_s"] = e.request_timeout_s;
  }
  j["model"] = e.model_name;
  j["max_attempts"] = e.retry.max_attempts;
  j["backoff_ms"] = ordered_json::array();
  for (auto d : e.retry.backoff) j["backoff_ms"].push_back(d.count());
  j["max_in_flight"] = e.max_in_flight;
  return j;
}

}  // namespace

void RunConfig::validate(bool guided) const {
  if (run_id.empty()) throw ConfigError("run_id must be non-empty");
  if (n_student_turns < 1) throw ConfigError("n_student_turns must be >= 1");
  if (eval_k < 1) throw ConfigError("eval_k must be >= 1");
  if (t_assess && (*t_assess < 1 || *t_assess > n_student_turns)) {
    throw ConfigError("t_assess must lie in [1, n_student_turns]");
  }
  if (exchanges < 1) throw ConfigError("exchanges must be >= 1");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (sandbox.wall_clock_timeout_s <= 0) throw ConfigError("sandbox.timeout_s must be > 0");
  if (sandbox.interpreter.empty()) throw ConfigError("sandbox.interpreter must be non-empty");
  if (sandbox.max_parallel < 1) throw ConfigError("sandbox.max_parallel must be >= 1");
  if (guided) {
    if (candidates < 2) throw ConfigError("candidates must be >= 2 for guided runs");
    endpoint("guide");
  }
}

const EndpointConfig& RunConfig::endpoint(const std::string& role) const {
  if (auto it = endpoints.find(role); it != endpoints.end()) return it->second;
  if (role == "solver") return endpoint("teacher");
  if (role == "guide") return endpoint("student");
  throw ConfigError("no endpoint configured for role '" + role + "'");
}

std::string RunConfig::label() const {
  return method_label.empty() ? std::string(to_string(mode)) : method_label;
}

RunConfig parse_run_config(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    cfg.run_id = doc.value("run_id", cfg.run_id);
    cfg.run_dir = resolve(base_dir, doc.value("run_dir", cfg.run_id));
    if (doc.contains("problems")) cfg.problems_path = resolve(base_dir, doc.at("problems").get<std::string>());
    cfg.method_label = doc.value("method_label", std::string{});
    cfg.mode = parse_mode(doc.value("mode", std::string("unguided")));
    cfg.guide_mode = parse_mode(doc.value("guide_mode", std::string("cot")));
    cfg.n_student_turns = doc.value("n_student_turns", cfg.n_student_turns);
    cfg.eval_k = doc.value("eval_k", cfg.eval_k);
    if (doc.contains("t_assess") && !doc.at("t_assess").is_null()) {
      const int t = doc.at("t_assess").get<int>();
      if (t != -1) cfg.t_assess = t;
    }
    cfg.candidates = doc.value("candidates", cfg.candidates);
    cfg.exchanges = doc.value("exchanges", cfg.exchanges);
    if (doc.contains("endpoints")) {
      for (const auto& [role, e] : doc.at("endpoints").items()) {
        cfg.endpoints[role] = parse_endpoint(role, e, base_dir);
      }
    }
    if (doc.contains("sampling")) cfg.sampling = parse_sampling(doc.at("sampling"), cfg.sampling);
    cfg.dialogue_sampling = cfg.sampling;
    cfg.dialogue_sampling.n = 1;
    if (doc.contains("dialogue_sampling")) {
      cfg.dialogue_sampling = parse_sampling(doc.at("dialogue_sampling"), cfg.dialogue_sampling);
    }
    if (doc.contains("judge_sampling")) {
      cfg.judge_sampling = parse_sampling(doc.at("judge_sampling"), cfg.judge_sampling);
    }
    if (doc.contains("sandbox")) {
      const auto& s = doc.at("sandbox");
      cfg.sandbox.wall_clock_timeout_s = s.value("timeout_s", cfg.sandbox.wall_clock_timeout_s);
      if (s.contains("memory_mb")) {
        cfg.sandbox.memory_bytes = s.at("memory_mb").get<std::size_t>() * 1024 * 1024;
      }
      cfg.sandbox.isolate_working_dir = s.value("isolate_working_dir", true);
      cfg.sandbox.deny_network = s.value("deny_network", true);
      if (s.contains("interpreter")) cfg.sandbox.interpreter = s.at("interpreter").get<std::vector<std::string>>();
      cfg.sandbox.max_parallel = s.value("max_parallel", cfg.sandbox.max_parallel);
    }
    cfg.parallelism = doc.value("parallelism", cfg.parallelism);
    const std::string fm = doc.value("filter_mode", std::string("any"));
    if (fm == "any") {
      cfg.filter_mode = FilterMode::any_correct;
    } else if (fm == "fraction") {
      cfg.filter_mode = FilterMode::fraction_correct;
    } else {
      throw ConfigError("filter_mode must be 'any' or 'fraction'");
    }
    if (doc.contains("judge")) {
      const auto& j = doc.at("judge");
      cfg.judge.parse_retries = j.value("parse_retries", cfg.judge.parse_retries);
      cfg.judge.similarity_problems = j.value("similarity_problems", cfg.judge.similarity_problems);
      if (j.contains("compare_run") && !j.at("compare_run").is_null()) {
        cfg.judge.compare_run = resolve(base_dir, j.at("compare_run").get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema violation: ") + e.what());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid config " + path.string() + ": " + e.what());
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_run_config(doc, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

ordered_json to_json(const SamplingParams& s) {
  ordered_json j;
  j["temperature"] = s.temperature;
  j["max_tokens"] = s.max_tokens;
  j["n"] = s.n;
  j["seed"] = s.seed ? ordered_json(*s.seed) : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const RunConfig& cfg) {
  ordered_json j;
  j["run_id"] = cfg.run_id;
  j["run_dir"] = cfg.run_dir.string();
  j["problems"] = cfg.problems_path.string();
  j["method_label"] = cfg.method_label;
  j["mode"] = to_string(cfg.mode);
  j["guide_mode"] = to_string(cfg.guide_mode);
  j["n_student_turns"] = cfg.n_student_turns;
  j["eval_k"] = cfg.eval_k;
  j["t_assess"] = cfg.t_assess ? *cfg.t_assess : -1;
  j["candidates"] = cfg.candidates;
  j["exchanges"] = cfg.exchanges;
  j["endpoints"] = ordered_json::object();
  for (const auto& [role, e] : cfg.endpoints) j["endpoints"][role] = endpoint_json(e);
  j["sampling"] = to_json(cfg.sampling);
  j["dialogue_sampling"] = to_json(cfg.dialogue_sampling);
  j["judge_sampling"] = to_json(cfg.judge_sampling);
  ordered_json s;
  s["timeout_s"] = cfg.sandbox.wall_clock_timeout_s;
  s["memory_mb"] = cfg.sandbox.memory_bytes / (1024 * 1024);
  s["isolate_working_dir"] = cfg.sandbox.isolate_working_dir;
  s["deny_network"] = cfg.sandbox.deny_network;
  s["interpreter"] = cfg.sandbox.interpreter;
  s["max_parallel"] = cfg.sandbox.max_parallel;
  j["sandbox"] = s;
  j["parallelism"] = cfg.parallelism;
  j["filter_mode"] = cfg.filter_mode == FilterMode::any_correct ? "any" : "fraction";
  ordered_json jd;
  jd["parse_retries"] = cfg.judge.parse_retries;
  jd["similarity_problems"] = cfg.judge.similarity_problems;
  jd["compare_run"] = cfg.judge.compare_run ? ordered_json(cfg.judge.compare_run->string())
                                            : ordered_json(nullptr);
  j["judge"] = jd;
  return j;
}

std::string config_digest(const RunConfig& cfg) {
  auto j = to_json(cfg);
  j.erase("run_dir");
  // parallelism only affects scheduling, never artifact content.
  j.erase("parallelism");
  return sha256_hex(j.dump());
}

}  // namespace inquire
