// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/core/types.hpp"

#include <cctype>

#include "inquire/core/errors.hpp"

namespace inquire {

Integer parse_integer(std::string_view digits) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < digits.size() && (digits[pos] == '+' || digits[pos] == '-')) {
    negative = digits[pos] == '-';
    ++pos;
  }
  if (pos == digits.size()) throw ParseError("not an integer: '" + std::string(digits) + "'");
  Integer value = 0;
  for (; pos < digits.size(); ++pos) {
    const char c = digits[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("not an integer: '" + std::string(digits) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

std::string to_string(const Integer& value) { return value.str(); }

std::string_view to_string(Domain d) { return d == Domain::math ? "math" : "coding"; }
std::string_view to_string(Role r) { return r == Role::teacher ? "teacher" : "student"; }
std::string_view to_string(Mode m) { return m == Mode::unguided ? "unguided" : "cot"; }

std::string_view to_string(Tag t) {
  switch (t) {
    case Tag::greeting: return "greeting";
    case Tag::question: return "question";
    case Tag::answer: return "answer";
    case Tag::assessment_solution: return "assessment_solution";
    case Tag::assessment_feedback: return "assessment_feedback";
  }
  return "unknown";
}

Domain parse_domain(std::string_view s) {
  if (s == "math") return Domain::math;
  if (s == "coding") return Domain::coding;
  throw ParseError("unknown domain '" + std::string(s) + "'");
}

Role parse_role(std::string_view s) {
  if (s == "teacher") return Role::teacher;
  if (s == "student") return Role::student;
  throw ParseError("unknown role '" + std::string(s) + "'");
}

Tag parse_tag(std::string_view s) {
  for (Tag t : {Tag::greeting, Tag::question, Tag::answer, Tag::assessment_solution,
                Tag::assessment_feedback}) {
    if (s == to_string(t)) return t;
  }
  throw ParseError("unknown tag '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
  if (s == "unguided") return Mode::unguided;
  if (s == "cot") return Mode::cot;
  throw ParseError("unknown mode '" + std::string(s) + "'");
}

void ConversationHistory::append(Role role, Tag tag, std::string content) {
  messages.push_back(Message{role, tag, static_cast<std::int64_t>(messages.size()), std::move(content)});
}

}  // namespace inquire
