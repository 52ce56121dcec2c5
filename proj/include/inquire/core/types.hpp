// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace inquire {

/// Math golds and extracted answers; the size of the integer is not bounded.
using Integer = boost::multiprecision::cpp_int;

Integer parse_integer(std::string_view digits);  // throws ParseError
std::string to_string(const Integer& value);

enum class Domain { math, coding };
enum class Role { teacher, student };
enum class Tag { greeting, question, answer, assessment_solution, assessment_feedback };
enum class Mode { unguided, cot };

std::string_view to_string(Domain d);
std::string_view to_string(Role r);
std::string_view to_string(Tag t);
std::string_view to_string(Mode m);

Domain parse_domain(std::string_view s);
Role parse_role(std::string_view s);
Tag parse_tag(std::string_view s);
Mode parse_mode(std::string_view s);

inline bool is_assessment(Tag t) {
  return t == Tag::assessment_solution || t == Tag::assessment_feedback;
}

struct MathGold {
  Integer answer;
  friend bool operator==(const MathGold&, const MathGold&) = default;
};

struct CodingGold {
  std::string entry_point;
  std::string canonical_tests;
  friend bool operator==(const CodingGold&, const CodingGold&) = default;
};

using Gold = std::variant<MathGold, CodingGold>;

struct Problem {
  std::string id;
  Domain domain = Domain::math;
  std::string statement;
  Gold gold;
  std::string source;
  std::map<std::string, std::string> metadata;

  const MathGold& math_gold() const { return std::get<MathGold>(gold); }
  const CodingGold& coding_gold() const { return std::get<CodingGold>(gold); }

  friend bool operator==(const Problem&, const Problem&) = default;
};

struct Message {
  Role role = Role::teacher;
  Tag tag = Tag::greeting;
  std::int64_t turn_index = 0;
  std::string content;

  friend bool operator==(const Message&, const Message&) = default;
};

struct ConversationHistory {
  std::string problem_id;
  std::vector<Message> messages;

  /// Append with turn_index set to the next message position.
  void append(Role role, Tag tag, std::string content);

  friend bool operator==(const ConversationHistory&, const ConversationHistory&) = default;
};

struct SamplingParams {
  double temperature = 0.3;
  int max_tokens = 2048;
  int n = 1;
  std::optional<std::int64_t> seed;

  friend bool operator==(const SamplingParams&, const SamplingParams&) = default;
};

}  // namespace inquire
