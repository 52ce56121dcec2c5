// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "inquire/core/types.hpp"
#include "inquire/gateway/chat.hpp"

namespace inquire::prompts {

// Verbatim prompt texts, typos included. `---*PROBLEM*---` (math) and
// `--- *PROBLEM* ---` (coding) mark where the problem statement goes.

inline constexpr std::string_view kMathPlaceholder = "---*PROBLEM*---";
inline constexpr std::string_view kCodingPlaceholder = "--- *PROBLEM* ---";

std::string_view student_question_template(Domain d, Mode m);
std::string_view student_answer_template(Domain d);
std::string_view teacher_template(Domain d);
std::string_view assessment_template(Domain d);
std::string_view judge_progress_template(Domain d);
std::string_view judge_similarity_template(Domain d);
std::string_view greeting(Domain d);

/// Replaces the domain placeholder in `tmpl` with `statement`.
std::string substitute_problem(std::string_view tmpl, Domain d, std::string_view statement);

/// Maps a history onto chat turns from one participant's point of view: that
/// participant's messages become `assistant`, the other side's `user`.
std::vector<gateway::ChatMessage> render_history(const ConversationHistory& h, Role perspective);

/// Answer-only request used for Pass@k sampling and assessment candidates:
/// the answer prompt as system, the history, then the problem as the final
/// user turn.
gateway::ChatRequest answer_request(const Problem& p, const ConversationHistory& h,
                                    const SamplingParams& sampling);

}  // namespace inquire::prompts
