// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/types.hpp"

namespace inquire {

struct RetryPolicy {
  int max_attempts = 3;
  std::vector<std::chrono::milliseconds> backoff{std::chrono::milliseconds(1000),
                                                 std::chrono::milliseconds(2000),
                                                 std::chrono::milliseconds(4000)};

  /// Delay before attempt `attempt + 1` (attempt is 1-based); the last entry
  /// repeats.
  std::chrono::milliseconds delay_after(int attempt) const;
};

struct EndpointConfig {
  enum class Kind { http_openai_compatible, scripted };

  Kind kind = Kind::scripted;
  std::string model_name;
  // http
  std::string base_url;
  std::string api_key_env;  // name of the environment variable, never the secret
  double request_timeout_s = 300.0;
  // scripted: the full script document, loaded at config time so the config
  // digest covers it.
  nlohmann::json script;
  RetryPolicy retry;
  int max_in_flight = 8;
};

struct SandboxLimits {
  double wall_clock_timeout_s = 10.0;
  std::size_t memory_bytes = std::size_t{512} * 1024 * 1024;
  bool isolate_working_dir = true;
  bool deny_network = true;
  std::vector<std::string> interpreter{"python3"};
  int max_parallel = 4;
};

enum class FilterMode { any_correct, fraction_correct };

struct JudgeSettings {
  int parse_retries = 2;
  int similarity_problems = 10;
  std::optional<std::filesystem::path> compare_run;  // run dir whose questions form the other axis
};

struct RunConfig {
  std::string run_id = "run";
  std::filesystem::path run_dir = "run";
  std::filesystem::path problems_path;
  std::string method_label;  // label used in reports; defaults to the mode name

  Mode mode = Mode::unguided;
  Mode guide_mode = Mode::cot;
  int n_student_turns = 6;
  int eval_k = 5;
  std::optional<int> t_assess;
  int candidates = 4;
  int exchanges = 3;

  std::map<std::string, EndpointConfig> endpoints;  // student, teacher, guide, judge, solver

  SamplingParams sampling;           // evaluation and assessment candidates
  SamplingParams dialogue_sampling;  // student questions and teacher replies
  SamplingParams judge_sampling{0.0, 2048, 1, std::nullopt};

  SandboxLimits sandbox;
  int parallelism = 4;
  FilterMode filter_mode = FilterMode::any_correct;
  JudgeSettings judge;

  /// Throws ConfigError on out-of-range values. `guided` additionally
  /// requires candidates >= 2 and a guide endpoint.
  void validate(bool guided = false) const;

  /// Registered endpoint for `role`; `solver` falls back to `teacher` and
  /// `guide` falls back to `student`. Throws ConfigError when absent.
  const EndpointConfig& endpoint(const std::string& role) const;
  std::string label() const;
};

/// Parses a config document. Relative paths (problems, run_dir, scripts,
/// compare_run) resolve against `base_dir`.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RunConfig& cfg);
nlohmann::ordered_json to_json(const SamplingParams& s);

/// SHA-256 over the canonical JSON of everything except run_dir. Secrets are
/// never part of the config, only the names of their environment variables.
std::string config_digest(const RunConfig& cfg);

}  // namespace inquire
