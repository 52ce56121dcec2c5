// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/types.hpp"

namespace inquire {

/// Every structural violation in `h`; an empty list means the history is valid.
///
/// Checked: a single greeting at index 0 (teacher, turn_index 0); turn_index
/// equal to message position; role/tag consistency; assessment messages in
/// adjacent (solution, feedback) pairs; strict student/teacher alternation of
/// the non-assessment messages after the greeting.
std::vector<std::string> validate_history(const ConversationHistory& h);

/// One JSON record per message: {problem_id, turn_index, role, tag, content}.
/// Output is canonical (fixed key order, '\n' line endings).
std::string serialize_transcript(const ConversationHistory& h);

/// Inverse of serialize_transcript. Throws ParseError naming the offending line.
ConversationHistory parse_transcript(std::string_view text);

/// Messages as a JSON array of {turn_index, role, tag, content}, for
/// embedding a history inside another record.
nlohmann::ordered_json messages_to_json(const ConversationHistory& h);
ConversationHistory messages_from_json(const std::string& problem_id, const nlohmann::json& j);  // ParseError

}  // namespace inquire
