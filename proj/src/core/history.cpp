// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/core/history.hpp"

#include <nlohmann/json.hpp>

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"

namespace inquire {

namespace {

Role expected_role(Tag t) {
  switch (t) {
    case Tag::greeting:
    case Tag::answer:
    case Tag::assessment_feedback:
      return Role::teacher;
    case Tag::question:
    case Tag::assessment_solution:
      return Role::student;
  }
  return Role::teacher;
}

std::string at(std::string_view what, std::size_t i) {
  return std::string(what) + " at index " + std::to_string(i);
}

}  // namespace

std::vector<std::string> validate_history(const ConversationHistory& h) {
  std::vector<std::string> violations;
  const auto& msgs = h.messages;
  if (msgs.empty()) {
    violations.push_back("missing greeting at index 0");
    return violations;
  }
  if (msgs[0].tag != Tag::greeting) violations.push_back("missing greeting at index 0");

  for (std::size_t i = 0; i < msgs.size(); ++i) {
    const Message& m = msgs[i];
    if (m.turn_index != static_cast<std::int64_t>(i)) {
      violations.push_back(at("turn_index mismatch", i));
    }
    if (m.role != expected_role(m.tag)) violations.push_back(at("role/tag mismatch", i));
    if (m.tag == Tag::greeting && i != 0) violations.push_back(at("extra greeting", i));
  }

  // Assessment pairing.
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    if (msgs[i].tag == Tag::assessment_solution) {
      if (i + 1 >= msgs.size() || msgs[i + 1].tag != Tag::assessment_feedback) {
        violations.push_back(at("unpaired assessment_solution", i));
      } else {
        ++i;
      }
    } else if (msgs[i].tag == Tag::assessment_feedback) {
      violations.push_back(at("unpaired assessment_feedback", i));
    }
  }

  // Alternation of the exchange messages, starting with a student question.
  Role next = Role::student;
  for (std::size_t i = 1; i < msgs.size(); ++i) {
    if (is_assessment(msgs[i].tag) || msgs[i].tag == Tag::greeting) continue;
    if (msgs[i].role != next) {
      violations.push_back(at("alternation violated", i));
      next = msgs[i].role;
    }
    next = next == Role::student ? Role::teacher : Role::student;
  }
  return violations;
}

std::string serialize_transcript(const ConversationHistory& h) {
  std::string out;
  for (const Message& m : h.messages) {
    nlohmann::ordered_json j;
    j["problem_id"] = h.problem_id;
    j["turn_index"] = m.turn_index;
    j["role"] = to_string(m.role);
    j["tag"] = to_string(m.tag);
    j["content"] = m.content;
    out += j.dump();
    out += '\n';
  }
  return out;
}

ConversationHistory parse_transcript(std::string_view text) {
  ConversationHistory h;
  std::size_t line_no = 0;
  bool first = true;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    try {
      if (!j.is_object()) throw ParseError("record is not an object", line_no);
      for (const char* key : {"problem_id", "turn_index", "role", "tag", "content"}) {
        if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", line_no);
      }
      Message m;
      m.role = parse_role(j.at("role").get<std::string>());
      m.tag = parse_tag(j.at("tag").get<std::string>());
      if (!j.at("turn_index").is_number_integer()) {
        throw ParseError("turn_index must be an integer", line_no);
      }
      m.turn_index = j.at("turn_index").get<std::int64_t>();
      m.content = j.at("content").get<std::string>();
      auto pid = j.at("problem_id").get<std::string>();
      if (first) {
        h.problem_id = pid;
        first = false;
      } else if (pid != h.problem_id) {
        throw ParseError("problem_id changes from '" + h.problem_id + "' to '" + pid + "'", line_no);
      }
      h.messages.push_back(std::move(m));
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("schema violation: ") + e.what(), line_no);
    }
  }
  if (first) throw ParseError("empty transcript");
  return h;
}

nlohmann::ordered_json messages_to_json(const ConversationHistory& h) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Message& m : h.messages) {
    nlohmann::ordered_json j;
    j["turn_index"] = m.turn_index;
    j["role"] = to_string(m.role);
    j["tag"] = to_string(m.tag);
    j["content"] = m.content;
    out.push_back(std::move(j));
  }
  return out;
}

ConversationHistory messages_from_json(const std::string& problem_id, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("history must be an array");
  ConversationHistory h;
  h.problem_id = problem_id;
  try {
    for (const auto& r : j) {
      Message m;
      m.turn_index = r.at("turn_index").get<std::int64_t>();
      m.role = parse_role(r.at("role").get<std::string>());
      m.tag = parse_tag(r.at("tag").get<std::string>());
      m.content = r.at("content").get<std::string>();
      h.messages.push_back(std::move(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("history schema violation: ") + e.what());
  }
  return h;
}

}  // namespace inquire
