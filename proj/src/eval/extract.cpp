// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/eval/extract.hpp"

#include <regex>

#include "inquire/core/io.hpp"

namespace inquire::eval {

namespace {

const std::regex& answer_pattern() {
  static const std::regex re(
      R"((?:^|[^a-z0-9_])answer[\s:*=]*\$?\s*([+-]?)\s*\$?\s*(\d{1,3}(?:,\d{3})+|\d+)(?!\d|[.,]\d))",
      std::regex::ECMAScript | std::regex::icase);
  return re;
}

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::string_view trim(std::string_view s) {
  s = trim_left(s);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::size_t backtick_run(std::string_view s) {
  std::size_t n = 0;
  while (n < s.size() && s[n] == '`') ++n;
  return n;
}

}  // namespace

std::optional<Integer> extract_math_answer(std::string_view text) {
  const auto lines = split_lines(text);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const std::string line(*it);
    std::optional<std::smatch> last;
    for (std::sregex_iterator m(line.begin(), line.end(), answer_pattern()), end; m != end; ++m) {
      last = *m;
    }
    if (!last) continue;
    std::string digits = (*last)[1].str();
    for (char c : (*last)[2].str()) {
      if (c != ',') digits += c;
    }
    return parse_integer(digits);
  }
  return std::nullopt;
}

std::optional<std::string> extract_code_block(std::string_view text) {
  std::optional<std::string> last;
  bool inside = false;
  std::size_t fence_len = 0;
  std::string current;
  for (std::string_view line : split_lines(text)) {
    const std::string_view body = trim_left(line);
    const std::size_t run = backtick_run(body);
    if (!inside) {
      if (run >= 3) {
        inside = true;
        fence_len = run;
        current.clear();
      }
      continue;
    }
    if (run >= fence_len && trim(body).size() == run) {
      inside = false;
      last = current;
      continue;
    }
    current.append(line);
    current.push_back('\n');
  }
  if (inside) last = current;
  return last;
}

}  // namespace inquire::eval
