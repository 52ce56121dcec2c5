// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <system_error>

#include <nlohmann/json.hpp>

#include "inquire/core/types.hpp"

namespace inquire::testing {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("inquire-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string random_text(std::mt19937_64& rng) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyz ABCXYZ0123456789.,;:!?\"'\\/{}[]\n\t`#*-_=+";
  static const char* extras[] = {"π", "é", "→", "😀", " "};
  std::uniform_int_distribution<int> len(0, 80);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> extra(0, 20);
  std::string s;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (extra(rng) == 0) {
      s += extras[static_cast<std::size_t>(extra(rng)) % 5];
    } else {
      s += alphabet[pick(rng)];
    }
  }
  return s;
}

/// A valid history: greeting, then `exchanges` question/answer pairs with at
/// most one assessment pair inserted before one of them.
inline ConversationHistory random_history(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exch(0, 8);
  ConversationHistory h;
  h.problem_id = "p-" + std::to_string(rng() % 1000);
  h.append(Role::teacher, Tag::greeting, random_text(rng));
  const int n = exch(rng);
  std::uniform_int_distribution<int> where(-1, std::max(n - 1, 0));
  const int assess_at = where(rng);
  for (int i = 0; i < n; ++i) {
    if (i == assess_at) {
      h.append(Role::student, Tag::assessment_solution, random_text(rng));
      h.append(Role::teacher, Tag::assessment_feedback, random_text(rng));
    }
    h.append(Role::student, Tag::question, random_text(rng));
    h.append(Role::teacher, Tag::answer, random_text(rng));
  }
  return h;
}

inline Problem math_problem(std::string id, long gold, std::string statement = "What is 2 + 4?") {
  Problem p;
  p.id = std::move(id);
  p.domain = Domain::math;
  p.statement = std::move(statement);
  p.gold = MathGold{Integer(gold)};
  p.source = "fixture";
  return p;
}

inline Problem coding_problem(std::string id) {
  Problem p;
  p.id = std::move(id);
  p.domain = Domain::coding;
  p.statement = "def add(a, b):\n    \"\"\"Return the sum of a and b.\"\"\"\n";
  p.gold = CodingGold{"add", "assert add(1, 2) == 3\nassert add(-1, 1) == 0\nassert add(10, 5) == 15\n"};
  p.source = "fixture";
  return p;
}

}  // namespace inquire::testing
