// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "inquire/core/types.hpp"

namespace inquire::gateway {

enum class Speaker { assistant, user };

struct ChatMessage {
  Speaker speaker = Speaker::user;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::string system_prompt;
  std::vector<ChatMessage> messages;  // non-empty
  SamplingParams sampling;
  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

/// Who is asking and why. Scripted backends key their responses on this;
/// it never enters the cache key.
struct CallContext {
  std::string role;     // student, teacher, guide, judge, solver
  std::string purpose;  // question, answer, eval, assessment, feedback, solve, judge_progress, ...
  std::string problem_id;
  int turn = 0;
  int sample_index = 0;
};

inline std::string_view to_string(Speaker s) { return s == Speaker::assistant ? "assistant" : "user"; }

}  // namespace inquire::gateway
